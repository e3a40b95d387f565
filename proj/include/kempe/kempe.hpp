#ifndef KEMPE_KEMPE_HPP
#define KEMPE_KEMPE_HPP

#include "kempe/chain.hpp"
#include "kempe/coloring.hpp"
#include "kempe/corpus.hpp"
#include "kempe/fan.hpp"
#include "kempe/graph.hpp"
#include "kempe/inversion.hpp"
#include "kempe/oracle.hpp"
#include "kempe/regularize.hpp"
#include "kempe/search.hpp"
#include "kempe/trace_io.hpp"
#include "kempe/transform.hpp"
#include "kempe/verify.hpp"

#endif
