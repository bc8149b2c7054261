#include "fuserl/util/rng.hpp"

#include <cmath>
#include <sstream>

#include "fuserl/util/errors.hpp"

namespace fuserl {

std::uint64_t mix64(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t deriveSeed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = mix64(seed ^ 0x2545f4914f6cdd1dULL);
  h = mix64(h ^ mix64(a));
  h = mix64(h ^ mix64(b));
  h = mix64(h ^ mix64(c));
  return h;
}

std::string RngStream::serialize() const {
  std::ostringstream out;
  out << engine_;
  return out.str();
}

RngStream RngStream::deserialize(const std::string& text) {
  RngStream s(0);
  std::istringstream in(text);
  in >> s.engine_;
  if (!in) throw ContractError("RngStream::deserialize: malformed state string");
  return s;
}

}  // namespace fuserl
