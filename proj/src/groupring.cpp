#include "spectile/groupring.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace spectile {

DivisorClassSet::DivisorClassSet(CtxPtr ctx) : ctx_(std::move(ctx)) {}

DivisorClassSet::DivisorClassSet(CtxPtr ctx, std::vector<Elem> members)
    : ctx_(std::move(ctx)), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (Elem d : members_)
    if (!ctx_->divides(d))
      throw std::invalid_argument("divisor class " + std::to_string(d) + " does not divide " +
                                  std::to_string(ctx_->order()));
}

DivisorClassSet DivisorClassSet::all(CtxPtr ctx) {
  auto divs = ctx->divisors();
  return DivisorClassSet(std::move(ctx), std::move(divs));
}

DivisorClassSet DivisorClassSet::from_mask(CtxPtr ctx, std::uint64_t mask) {
  std::vector<Elem> m;
  const auto& divs = ctx->divisors();
  for (std::size_t i = 0; i < divs.size() && i < 64; ++i)
    if (mask >> i & 1) m.push_back(divs[i]);
  return DivisorClassSet(std::move(ctx), std::move(m));
}

bool DivisorClassSet::contains(Elem d) const {
  return std::binary_search(members_.begin(), members_.end(), d);
}

bool DivisorClassSet::is_subset_of(const DivisorClassSet& o) const {
  return std::includes(o.members_.begin(), o.members_.end(), members_.begin(), members_.end());
}

std::uint64_t DivisorClassSet::mask() const {
  if (ctx_->divisors().size() > 64)
    throw std::invalid_argument("DivisorClassSet::mask: more than 64 divisors");
  std::uint64_t m = 0;
  for (Elem d : members_) m |= std::uint64_t{1} << ctx_->divisor_index(d);
  return m;
}

std::vector<Elem> DivisorClassSet::expand() const {
  std::vector<Elem> out;
  for (Elem x = 0; x < ctx_->order(); ++x)
    if (contains(ctx_->class_of(x))) out.push_back(x);
  return out;
}

std::string DivisorClassSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < members_.size(); ++i) os << (i ? "," : "") << members_[i];
  os << '}';
  return os.str();
}

IntPolynomial mask_polynomial(const CyclicMultiset& a) {
  std::vector<BigInt> c(a.order());
  for (Elem x = 0; x < a.order(); ++x) c[x] = a[x];
  return IntPolynomial(std::move(c));
}

bool phi_divides(Elem d, const CyclicMultiset& a) {
  if (!a.ctx().divides(d))
    throw std::invalid_argument("phi_divides: " + std::to_string(d) + " does not divide " +
                                std::to_string(a.order()));
  // Phi_d | x^d - 1, so reduce the mask modulo x^d - 1 first.
  std::vector<std::int64_t> residues(d, 0);
  for (Elem x = 0; x < a.order(); ++x) residues[x % d] += a[x];
  return cyclotomic_divides_reduced(d, residues);
}

DivisorClassSet zero_divisor_set(const CyclicMultiset& a) {
  if (a.empty()) throw std::invalid_argument("zero_divisor_set: empty multiset");
  std::vector<Elem> members;
  for (Elem d : a.ctx().divisors())
    if (d > 1 && phi_divides(d, a)) members.push_back(d);
  return DivisorClassSet(a.ctx_ptr(), std::move(members));
}

CyclicMultiset project(const CyclicMultiset& a, Elem m) {
  if (!a.ctx().divides(m))
    throw std::invalid_argument("project: " + std::to_string(m) + " does not divide " +
                                std::to_string(a.order()));
  std::vector<std::uint32_t> out(m, 0);
  for (Elem x = 0; x < a.order(); ++x) out[x % m] += a[x];
  return CyclicMultiset(CyclicGroupCtx::of(m), std::move(out));
}

bool canonical_precedes(const CyclicMultiset& x, const CyclicMultiset& y) {
  const auto a = x.multiplicities();
  const auto b = y.multiplicities();
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

CyclicMultiset affine_canonical(const CyclicMultiset& a) {
  CyclicMultiset best = a;
  for (Elem u : a.ctx().units()) {
    for (Elem b = 0; b < a.order(); ++b) {
      CyclicMultiset img = a.affine_image(u, b);
      if (canonical_precedes(img, best)) best = std::move(img);
    }
  }
  return best;
}

CyclicMultiset difference_multiset(const CyclicMultiset& a) {
  if (!a.is_set()) throw std::invalid_argument("difference_multiset: input must be a set");
  const auto elems = a.support();
  const Elem n = a.order();
  std::vector<std::uint32_t> out(n, 0);
  for (Elem x : elems)
    for (Elem y : elems) ++out[(x + n - y) % n];
  return CyclicMultiset(a.ctx_ptr(), std::move(out));
}

}  // namespace spectile
