#include "xdop/family.hpp"

namespace xdop {

Family family_from_name(const std::string& s) {
  if (s == "R") return Family::R;
  if (s == "qR") return Family::qR;
  if (s == "dH") return Family::dH;
  if (s == "dqH") return Family::dqH;
  if (s == "lqJ") return Family::lqJ;
  throw std::invalid_argument("unknown family '" + s + "' (expected R, qR, dH, dqH, lqJ)");
}

}  // namespace xdop
