#include "nilorbit/tables.hpp"

#include <map>

namespace nilorbit::tables {

namespace {
// ascending coefficients in v
ClassPolynomial make(std::vector<long long> asc) {
  std::vector<Int> c(asc.begin(), asc.end());
  return ClassPolynomial(std::move(c));
}
}  // namespace

std::optional<ClassPolynomial> class_number(char type, int rank) {
  if (type == 'C' && rank >= 3) type = 'B';  // the catalogued values coincide
  if (type == 'C' && rank == 2) type = 'B';
  switch (type) {
    case 'A':
      switch (rank) {
        case 1: return make({1, 1});
        case 2: return make({1, 3, 1});
        case 3: return make({1, 6, 7, 2});
        case 4: return make({1, 10, 25, 20, 5});
        case 5: return make({1, 15, 65, 105, 70, 18, 1});
      }
      break;
    case 'B':
      switch (rank) {
        case 2: return make({1, 4, 2});
        case 3: return make({1, 9, 16, 8, 1});
        case 4: return make({1, 16, 64, 88, 48, 11, 1});
        case 5: return make({1, 25, 180, 500, 630, 395, 132, 24, 2});
      }
      break;
    case 'D':
      switch (rank) {
        case 4: return make({1, 12, 34, 36, 15, 2});
        case 5: return make({1, 20, 110, 240, 235, 106, 22, 2});
      }
      break;
    case 'G':
      if (rank == 2) return make({1, 6, 5, 1});
      break;
    case 'F':
      if (rank == 4) return make({1, 24, 140, 288, 256, 124, 40, 9, 1});
      break;
    default:
      break;
  }
  return std::nullopt;
}

std::optional<ClassPolynomial> subquotient_class_number(char type, int rank, int l) {
  static const std::map<std::tuple<char, int, int>, std::vector<long long>> kTable2 = {
      {{'F', 4, 1}, {1, 20, 88, 119, 63, 24, 7, 1}},
      {{'F', 4, 2}, {1, 17, 58, 50, 14, 2}},
      {{'F', 4, 3}, {1, 14, 35, 18, 2}},
      {{'E', 6, 1}, {1, 30, 255, 868, 1315, 993, 435, 153, 47, 10, 1}},
      {{'E', 6, 2}, {1, 25, 165, 404, 386, 160, 28, 2}},
      {{'E', 6, 3}, {1, 20, 95, 148, 70, 11, 1}},
      {{'E', 7, 4}, {1, 38, 395, 1499, 2312, 1600, 512, 94, 13, 1}},
      {{'E', 7, 5}, {1, 32, 260, 700, 685, 292, 63, 10, 1}},
      {{'E', 7, 6}, {1, 27, 170, 312, 172, 39, 3}},
      {{'E', 8, 10}, {1, 52, 699, 3014, 4652, 2568, 719, 135, 17, 1}},
      {{'E', 8, 11}, {1, 46, 516, 1693, 1766, 518, 92, 12, 1}},
      {{'E', 8, 12}, {1, 41, 386, 964, 660, 67, 5}},
  };
  auto it = kTable2.find({type, rank, l});
  if (it == kTable2.end()) return std::nullopt;
  return make(it->second);
}

}  // namespace nilorbit::tables
