#pragma once

#include "adic.hpp"
#include "base.hpp"
#include "cocycle.hpp"
#include "germs.hpp"
#include "graph.hpp"
#include "hyperbolicity.hpp"
#include "json_util.hpp"
#include "level_graph.hpp"
#include "limitspace.hpp"
#include "logscale.hpp"
#include "parallel.hpp"
#include "quadratic.hpp"
#include "selfsim.hpp"
#include "sft.hpp"
#include "words.hpp"
