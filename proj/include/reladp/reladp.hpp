#pragma once

#include "adp.hpp"
#include "bench.hpp"
#include "classic.hpp"
#include "graph.hpp"
#include "orders.hpp"
#include "poly.hpp"
#include "proof.hpp"
#include "prover.hpp"
#include "rewrite.hpp"
#include "term.hpp"
#include "trs.hpp"
