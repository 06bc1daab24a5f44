#pragma once

// Text exports of an LpProblem. Output depends only on the problem (row and
// column order are taken as declared), so identical problems produce
// byte-identical files. Numbers use the shortest representation that reads
// back to the same double.

#include <string>

#include "odds/lp_model.hpp"

namespace odds::lp {

/// Fixed-format MPS with an OBJSENSE section. Names and the first two
/// number fields start at the fixed-format columns; a long number may run
/// past column 36, which whitespace-splitting readers accept.
std::string to_mps(const LpProblem& prob);

/// CPLEX-style LP text (Maximize/Minimize, Subject To, Bounds, End).
std::string to_lp_text(const LpProblem& prob);

}  // namespace odds::lp
