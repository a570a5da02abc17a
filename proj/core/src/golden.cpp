#include "meandric/golden.hpp"

namespace meandric::golden {

const std::map<int, std::vector<long>>& polynomials() {
  static const std::map<int, std::vector<long>> table = {
      {1, {2}},
      {2, {8, 4, -12, 4}},
      {3, {42, 52, -146, 8, 134, -92, 18}},
      {4, {262, 520, -1440, -520, 3052, -1656, -1344, 1864, -770, 112}},
      {5,
       {1828, 4948, -13664, -11660, 48012, -16808, -54912, 60568, -3108,
        -31788, 23264, -7052, 820}},
      {6,
       {13820, 46692, -129026, -181480, 652408, -76668, -1278814, 1213592,
        556540, -1587476, 798210, 311016, -558256, 283820, -68322, 6632}},
  };
  return table;
}

const std::map<int, std::string>& constants() {
  static const std::map<int, std::string> table = {
      {1, "2"}, {2, "2"}, {3, "4/3"}, {4, "2/3"}, {5, "4/15"}, {6, "4/45"},
  };
  return table;
}

}  // namespace meandric::golden
