#pragma once

#include <map>
#include <string>
#include <vector>

namespace meandric::golden {

/// Reference P_r coefficients, ascending degree, r = 1..6.
const std::map<int, std::vector<long>>& polynomials();

/// Reference asymptotic multipliers of 1/sqrt(pi) as "p/q" strings, r = 1..6.
const std::map<int, std::string>& constants();

}  // namespace meandric::golden
