#include "fcset/report.hpp"

#include <sstream>

namespace fcs {

bool Record::passed() const {
  for (const auto& [k, v] : fields)
    if (k == "status") return v == "pass";
  return true;
}

std::string Record::line() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, v] : fields) {
    if (!first) out << " ";
    first = false;
    out << k << "=" << v;
  }
  return out.str();
}

bool Report::all_pass() const { return fail_count() == 0; }

long Report::fail_count() const {
  long n = 0;
  for (const auto& r : records)
    if (!r.passed()) ++n;
  return n;
}

std::string Report::render(OutputFormat fmt) const {
  std::ostringstream out;
  if (fmt == OutputFormat::Records) {
    for (const auto& r : records) out << r.line() << "\n";
    return out.str();
  }
  for (const auto& r : records) {
    std::string status, rest;
    for (const auto& [k, v] : r.fields) {
      if (k == "status") {
        status = v;
        continue;
      }
      if (!rest.empty()) rest += "  ";
      rest += k + "=" + v;
    }
    if (status.empty())
      out << "       " << rest << "\n";
    else
      out << (status == "pass" ? "[ ok ] " : "[FAIL] ") << rest << "\n";
  }
  return out.str();
}

}  // namespace fcs
