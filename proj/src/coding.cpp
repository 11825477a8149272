#include "efunc/coding.hpp"

#include <limits>
#include <string>

#include "efunc/errors.hpp"

namespace efunc {

namespace {

constexpr Code kMax = std::numeric_limits<Code>::max();

Code checked_add(Code a, Code b) {
  if (a > kMax - b) throw CodingError("code overflow in addition");
  return a + b;
}

Code checked_mul(Code a, Code b) {
  if (a != 0 && b > kMax / a) throw CodingError("code overflow in multiplication");
  return a * b;
}

// Largest w with w(w+1)/2 <= z.
Code triangular_root(Code z) {
  Code lo = 0;
  Code hi = Code{1} << 33;
  while (lo < hi) {
    const Code mid = lo + (hi - lo + 1) / 2;
    const unsigned __int128 t = static_cast<unsigned __int128>(mid) * (mid + 1) / 2;
    if (t <= z)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

}  // namespace

Code cantor_pair(Code x, Code y) {
  const Code s = checked_add(x, y);
  const Code s1 = checked_add(s, 1);
  const Code t = (s % 2 == 0) ? checked_mul(s / 2, s1) : checked_mul(s, s1 / 2);
  return checked_add(t, y);
}

std::pair<Code, Code> cantor_unpair(Code z) {
  const Code w = triangular_root(z);
  const Code t = (w % 2 == 0) ? (w / 2) * (w + 1) : w * ((w + 1) / 2);
  const Code y = z - t;
  return {w - y, y};
}

Code tuple_encode(std::span<const Code> xs, std::size_t arity) {
  if (arity == 0 || xs.size() != arity)
    throw CodingError("tuple of length " + std::to_string(xs.size()) + " does not match arity " +
                      std::to_string(arity));
  Code acc = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) acc = cantor_pair(acc, xs[i]);
  return acc;
}

std::vector<Code> tuple_decode(Code c, std::size_t arity) {
  if (arity == 0) throw CodingError("arity must be positive");
  std::vector<Code> out(arity);
  for (std::size_t i = arity; i-- > 1;) {
    auto [rest, last] = cantor_unpair(c);
    out[i] = last;
    c = rest;
  }
  out[0] = c;
  return out;
}

CodeSet join(std::span<const CodeSet> parts) {
  const std::size_t k = parts.size();
  if (k < 2) throw CodingError("join needs at least two columns");
  CodeSet out;
  for (std::size_t j = 0; j < k; ++j)
    for (Code c : parts[j]) out.insert(checked_add(checked_mul(k, c), j));
  return out;
}

CodeSet join3(const CodeSet& a, const CodeSet& b, const CodeSet& c) {
  CodeSet out;
  for (Code x : a) out.insert(checked_mul(3, x));
  for (Code x : b) out.insert(checked_add(checked_mul(3, x), 1));
  for (Code x : c) out.insert(checked_add(checked_mul(3, x), 2));
  return out;
}

CodeSet project(const CodeSet& joined, std::size_t column, std::size_t k) {
  CodeSet out;
  for (Code c : joined)
    if (c % k == column) out.insert(c / k);
  return out;
}

}  // namespace efunc
