#include "sumprod/finite_set.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sumprod/error.hpp"

namespace sumprod {

FiniteSet::FiniteSet(std::initializer_list<Rational> xs)
    : FiniteSet(std::vector<Rational>(xs)) {}

FiniteSet::FiniteSet(std::vector<Rational> xs) : elems_(std::move(xs)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

FiniteSet FiniteSet::from_sorted_unique(std::vector<Rational> xs) {
  FiniteSet s;
  s.elems_ = std::move(xs);
  return s;
}

bool FiniteSet::contains(const Rational& x) const {
  return std::binary_search(elems_.begin(), elems_.end(), x);
}

bool FiniteSet::all_integer() const {
  return std::all_of(elems_.begin(), elems_.end(),
                     [](const Rational& r) { return r.is_integer(); });
}

FiniteSet FiniteSet::without_zero() const {
  std::vector<Rational> out;
  out.reserve(elems_.size());
  for (const auto& x : elems_)
    if (!x.is_zero()) out.push_back(x);
  return from_sorted_unique(std::move(out));
}

FiniteSet set_union(const FiniteSet& a, const FiniteSet& b) {
  std::vector<Rational> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return FiniteSet::from_sorted_unique(std::move(out));
}

FiniteSet set_intersection(const FiniteSet& a, const FiniteSet& b) {
  std::vector<Rational> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return FiniteSet::from_sorted_unique(std::move(out));
}

FiniteSet parse_set(std::istream& in, std::size_t* duplicates) {
  std::vector<Rational> xs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      xs.push_back(Rational::parse(line));
    } catch (const Error& e) {
      fail(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  std::size_t raw = xs.size();
  FiniteSet s(std::move(xs));
  if (duplicates) *duplicates = raw - s.size();
  return s;
}

FiniteSet read_set_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open set file '" + path + "'");
  std::size_t dups = 0;
  FiniteSet s = parse_set(in, &dups);
  if (dups > 0)
    std::cerr << "warning: " << path << ": merged " << dups << " duplicate element(s)\n";
  return s;
}

void write_set(std::ostream& out, const FiniteSet& s) {
  for (const auto& x : s) out << x.to_string() << '\n';
}

std::string to_string(const FiniteSet& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i].to_string();
  os << '}';
  return os.str();
}

}  // namespace sumprod
