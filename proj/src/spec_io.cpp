#include "pgl/spec_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "pgl/finite_core.hpp"

namespace pgl {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

std::uint64_t number(const std::string& s, std::size_t line, const std::string& what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw SpecError(line, "expected a nonnegative integer for " + what + ", got '" + s + "'");
  try {
    return std::stoull(s);
  } catch (const std::out_of_range&) {
    throw SpecError(line, what + " out of range");
  }
}

std::uint32_t exponent(const std::string& s, std::size_t line) {
  const auto v = number(s, line, "exponent");
  if (v == 0 || v > 64) throw SpecError(line, "exponent must be between 1 and 64");
  return static_cast<std::uint32_t>(v);
}

}  // namespace

IsoTypeSpec parse_spec(const std::string& text) {
  IsoTypeSpec t;
  std::set<std::string> seen;
  bool have_p = false;
  std::vector<std::vector<std::uint32_t>> rows;
  std::optional<std::uint32_t> staircase;
  std::size_t sf_line = 0;
  std::istringstream is(text);
  std::string raw;
  for (std::size_t line = 1; std::getline(is, raw); ++line) {
    const auto body = trim(raw.substr(0, raw.find('#')));
    if (body.empty()) continue;
    const auto colon = body.find(':');
    if (colon == std::string::npos) throw SpecError(line, "expected 'key: value'");
    const auto key = trim(body.substr(0, colon));
    const auto value = trim(body.substr(colon + 1));
    if (key != "sfunction" && !seen.insert(key).second) throw SpecError(line, "duplicate key '" + key + "'");
    if (key == "p") {
      const auto p = number(value, line, "p");
      if (p > 1'000'000 || !is_prime(p)) throw SpecError(line, "p must be a prime");
      t.p = static_cast<std::uint32_t>(p);
      have_p = true;
    } else if (key == "divisible_rank") {
      t.divisible_rank = value == "omega" ? Rank::infinite()
                                          : Rank::finite(static_cast<std::uint32_t>(number(value, line, "rank")));
    } else if (key == "cyclic") {
      for (const auto& item : split(value, ',')) {
        const auto parts = split(item, ':');
        if (parts.size() != 2) throw SpecError(line, "cyclic entries are <exp>:<mult>");
        const auto e = exponent(parts[0], line);
        const auto m = number(parts[1], line, "multiplicity");
        if (m == 0) throw SpecError(line, "multiplicity must be positive");
        if (t.character.finite.count(e)) throw SpecError(line, "exponent " + parts[0] + " given twice");
        t.character.finite[e] = m;
      }
    } else if (key == "character") {
      std::set<CharEntry> entries;
      for (const auto& item : split(value, ',')) {
        const auto parts = split(item, ':');
        if (parts.size() != 2) throw SpecError(line, "character entries are <n>:<k>");
        entries.insert({exponent(parts[0], line), number(parts[1], line, "k")});
      }
      Character c;
      try {
        c = Character::from_entries(entries);
      } catch (const std::invalid_argument& e) {
        throw SpecError(line, e.what());
      }
      for (const auto& [n, k] : c.finite) {
        if (t.character.finite.count(n)) throw SpecError(line, "exponent " + std::to_string(n) + " given twice");
        t.character.finite[n] = k;
      }
    } else if (key == "cyclic_infinite") {
      for (const auto& item : split(value, ',')) t.character.infinite.insert(exponent(item, line));
    } else if (key == "sfunction") {
      const auto colon2 = value.find(':');
      if (colon2 == std::string::npos) throw SpecError(line, "sfunction rows are <i>:<v0>,<v1>,...");
      const auto i = number(trim(value.substr(0, colon2)), line, "row index");
      if (i != rows.size()) throw SpecError(line, "sfunction row " + std::to_string(i) + " out of order");
      std::vector<std::uint32_t> row;
      for (const auto& v : split(value.substr(colon2 + 1), ','))
        row.push_back(static_cast<std::uint32_t>(number(v, line, "sfunction value")));
      if (row.empty()) throw SpecError(line, "sfunction row " + std::to_string(i) + " is empty");
      for (std::size_t k = 1; k < row.size(); ++k)
        if (row[k] < row[k - 1]) throw SpecError(line, "sfunction row " + std::to_string(i) + " is not monotone");
      rows.push_back(std::move(row));
      sf_line = line;
    } else if (key == "sfunction_staircase") {
      staircase = static_cast<std::uint32_t>(number(value, line, "offset"));
      sf_line = line;
    } else if (key == "inf_mode") {
      if (value == "computable")
        t.inf_mode = InfMode::computable;
      else if (value == "sigma1")
        t.inf_mode = InfMode::sigma1;
      else
        throw SpecError(line, "inf_mode is computable or sigma1");
    } else {
      throw SpecError(line, "unknown key '" + key + "'");
    }
  }
  if (!have_p) throw SpecError(0, "missing 'p'");
  if (staircase && !rows.empty()) throw SpecError(sf_line, "sfunction rows and sfunction_staircase are exclusive");
  if (staircase) t.character.sfunction = SFunction::staircase(*staircase);
  if (!rows.empty()) t.character.sfunction = SFunction::table(std::move(rows));
  for (auto n : t.character.infinite)
    if (t.character.finite.count(n)) t.character.finite.erase(n);
  return t;
}

IsoTypeSpec parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(0, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_spec(os.str());
}

std::string print_spec(const IsoTypeSpec& t) {
  std::ostringstream os;
  os << "p: " << t.p << "\n";
  os << "divisible_rank: " << t.divisible_rank.to_string() << "\n";
  const auto& c = t.character;
  if (!c.finite.empty()) {
    os << "cyclic: ";
    bool first = true;
    for (const auto& [n, k] : c.finite) {
      os << (first ? "" : ",") << n << ":" << k;
      first = false;
    }
    os << "\n";
  }
  if (!c.infinite.empty()) {
    os << "cyclic_infinite: ";
    bool first = true;
    for (auto n : c.infinite) {
      os << (first ? "" : ",") << n;
      first = false;
    }
    os << "\n";
  }
  if (c.sfunction) {
    if (c.sfunction->kind() == SFunction::Kind::staircase) {
      os << "sfunction_staircase: " << c.sfunction->offset() << "\n";
    } else {
      for (std::size_t i = 0; i < c.sfunction->rows().size(); ++i) {
        os << "sfunction: " << i << ":";
        const auto& row = c.sfunction->rows()[i];
        for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << row[k];
        os << "\n";
      }
    }
  }
  os << "inf_mode: " << (t.inf_mode == InfMode::computable ? "computable" : "sigma1") << "\n";
  return os.str();
}

}  // namespace pgl
