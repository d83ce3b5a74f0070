#include "fixtures.hpp"

namespace flp::test {

Instance triple_1d() {
  return parse_instance_text(
      "FLP 1\n"
      "N 3\n"
      "L 100\n"
      "COMP 1 1\n"
      "COMP 2 2\n"
      "COMP 3 3\n"
      "P 1 2 1\n"
      "P 1 3 1\n"
      "P 2 3 1\n");
}

Instance two_squares_2d() {
  return parse_instance_text(
      "FLP 2\n"
      "N 2\n"
      "L 4 4\n"
      "COMP 1 0.5 0.5 0.5 0.5 1\n"
      "COMP 2 0.5 0.5 0.5 0.5 1\n"
      "P 1 2 2\n");
}

}  // namespace flp::test
