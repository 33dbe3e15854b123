#include "tsdlink/report.hpp"

#include <sstream>

namespace tsdlink {

bool ValidationReport::passed() const noexcept {
  if (!failures_.empty()) return false;
  for (const auto& c : checks_) {
    if (c.asserted && !c.passed) return false;
  }
  return true;
}

void ValidationReport::merge(const ValidationReport& other) {
  failures_.insert(failures_.end(), other.failures_.begin(), other.failures_.end());
  checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
}

std::string ValidationReport::to_text(std::size_t max_failures) const {
  std::ostringstream out;
  for (const auto& c : checks_) {
    out << c.identity << ": " << (c.passed ? "PASS" : c.asserted ? "FAIL" : "DIFFERS") << " (" << c.instances << ' ' << c.unit << ')';
    if (!c.note.empty()) out << " [" << c.note << ']';
    out << '\n';
  }
  std::size_t shown = 0;
  for (const auto& f : failures_) {
    if (shown++ == max_failures) {
      out << "  ... " << failures_.size() - max_failures << " more failures\n";
      break;
    }
    out << "  failure " << f.identity << " at (";
    for (std::size_t i = 0; i < f.witness.size(); ++i) out << (i ? "," : "") << f.witness[i];
    out << "): " << f.detail << '\n';
  }
  return out.str();
}

}  // namespace tsdlink
