#include "spectile/multiset.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace spectile {

CyclicMultiset::CyclicMultiset(CtxPtr ctx) : ctx_(std::move(ctx)) {
  if (!ctx_) throw std::invalid_argument("CyclicMultiset: null context");
  mult_.assign(ctx_->order(), 0);
}

CyclicMultiset::CyclicMultiset(CtxPtr ctx, std::vector<std::uint32_t> mult)
    : ctx_(std::move(ctx)), mult_(std::move(mult)) {
  if (!ctx_) throw std::invalid_argument("CyclicMultiset: null context");
  if (mult_.size() != ctx_->order())
    throw std::invalid_argument("CyclicMultiset: multiplicity array must have length n");
}

CyclicMultiset CyclicMultiset::from_elements(Elem n, std::span<const Elem> elems) {
  CyclicMultiset m(CyclicGroupCtx::of(n));
  for (Elem x : elems) {
    if (x >= n)
      throw std::invalid_argument("element " + std::to_string(x) + " outside Z_" + std::to_string(n));
    ++m.mult_[x];
  }
  return m;
}

CyclicMultiset CyclicMultiset::from_elements(Elem n, std::initializer_list<Elem> elems) {
  return from_elements(n, std::span<const Elem>(elems.begin(), elems.size()));
}

CyclicMultiset CyclicMultiset::full_group(Elem n) {
  return CyclicMultiset(CyclicGroupCtx::of(n), std::vector<std::uint32_t>(n, 1));
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n')) s.remove_suffix(1);
  return s;
}

std::uint32_t parse_uint(std::string_view s, std::string_view what) {
  s = trim(s);
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("bad " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

}  // namespace

CyclicMultiset CyclicMultiset::parse(std::string_view literal) {
  literal = trim(literal);
  if (literal.substr(0, 2) != "n=")
    throw std::invalid_argument("set literal must start with 'n=': " + std::string(literal));
  const auto colon = literal.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("set literal missing ':': " + std::string(literal));
  const Elem n = parse_uint(literal.substr(2, colon - 2), "group order");
  if (n == 0) throw std::invalid_argument("group order must be positive");
  CyclicMultiset m(CyclicGroupCtx::of(n));
  std::string_view body = trim(literal.substr(colon + 1));
  while (!body.empty()) {
    const auto comma = body.find(',');
    std::string_view item = trim(body.substr(0, comma));
    body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
    if (item.empty()) throw std::invalid_argument("empty element in set literal");
    std::uint32_t count = 1;
    if (const auto caret = item.find('^'); caret != std::string_view::npos) {
      count = parse_uint(item.substr(caret + 1), "multiplicity");
      item = item.substr(0, caret);
    }
    const Elem x = parse_uint(item, "element");
    if (x >= n)
      throw std::invalid_argument("element " + std::to_string(x) + " outside Z_" + std::to_string(n));
    m.mult_[x] += count;
  }
  return m;
}

std::uint64_t CyclicMultiset::total() const noexcept {
  return std::accumulate(mult_.begin(), mult_.end(), std::uint64_t{0});
}

bool CyclicMultiset::is_set() const noexcept {
  return std::all_of(mult_.begin(), mult_.end(), [](std::uint32_t c) { return c <= 1; });
}

std::vector<Elem> CyclicMultiset::support() const {
  std::vector<Elem> out;
  for (Elem x = 0; x < mult_.size(); ++x)
    if (mult_[x] != 0) out.push_back(x);
  return out;
}

CyclicMultiset CyclicMultiset::affine_image(Elem a, Elem b) const {
  const std::uint64_t n = order();
  std::vector<std::uint32_t> out(n, 0);
  for (std::uint64_t x = 0; x < n; ++x)
    if (mult_[x] != 0) out[(a * x + b) % n] += mult_[x];
  return CyclicMultiset(ctx_, std::move(out));
}

std::string CyclicMultiset::to_string() const {
  std::ostringstream os;
  os << "n=" << order() << ':';
  bool first = true;
  for (Elem x = 0; x < mult_.size(); ++x) {
    if (mult_[x] == 0) continue;
    if (!first) os << ',';
    os << x;
    if (mult_[x] > 1) os << '^' << mult_[x];
    first = false;
  }
  return os.str();
}

}  // namespace spectile
