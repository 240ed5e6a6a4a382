#include <array>
#include <charconv>
#include <sstream>

#include "rnaicgf/cgf.hpp"

namespace rnaicgf {
namespace {

std::string format_rate(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  std::string s(buf.data(), ptr);
  // "tau@1" followed by ".0" would re-lex as the rate 1.0
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

void print_items(std::ostream& os, const Solution& s) {
  bool first = true;
  for (const auto& [name, n] : s) {
    if (!first) os << " | ";
    first = false;
    if (n > 1) os << n << "*";
    os << name;
  }
}

void print_prefix(std::ostream& os, const Prefix& p) {
  switch (p.kind) {
    case PrefixKind::Tau: os << "tau"; break;
    case PrefixKind::In: os << "?" << p.channel; break;
    case PrefixKind::Out: os << "!" << p.channel; break;
  }
  os << "@" << format_rate(p.rate.value());
}

}  // namespace

std::string print_cgf(const CgfProgram& program) {
  std::ostringstream os;
  for (const auto& [name, molecule] : program.env) {
    os << name << " = ";
    if (molecule.inert()) {
      os << "0";
    }
    for (std::size_t i = 0; i < molecule.choices.size(); ++i) {
      const auto& choice = molecule.choices[i];
      if (i > 0) os << " + ";
      print_prefix(os, choice.prefix);
      os << ".";
      if (choice.continuation.empty()) {
        os << "0";
      } else {
        os << "(";
        print_items(os, choice.continuation);
        os << ")";
      }
    }
    os << "\n";
  }
  os << "init ";
  if (program.init.empty()) {
    os << "0";
  } else {
    print_items(os, program.init);
  }
  os << "\n";
  return os.str();
}

}  // namespace rnaicgf
