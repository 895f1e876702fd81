#pragma once

#include "sinv/bitvec.hpp"
#include "sinv/bounds.hpp"
#include "sinv/error.hpp"
#include "sinv/exec.hpp"
#include "sinv/formula.hpp"
#include "sinv/formula_io.hpp"
#include "sinv/graph.hpp"
#include "sinv/lattice.hpp"
#include "sinv/min_weight.hpp"
#include "sinv/oracle.hpp"
#include "sinv/semantics.hpp"
#include "sinv/subspace.hpp"
#include "sinv/synthesis.hpp"
#include "sinv/trace.hpp"
#include "sinv/version.hpp"
