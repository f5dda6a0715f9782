#pragma once

#include "cutcover/common.hpp"
#include "cutcover/graph.hpp"
#include "cutcover/mwu.hpp"
#include "cutcover/spanning_tree.hpp"
#include "cutcover/tree_packing.hpp"
#include "cutcover/cut_oracle.hpp"
#include "cutcover/path_extraction.hpp"
#include "cutcover/tree_focus.hpp"
#include "cutcover/kecss.hpp"
