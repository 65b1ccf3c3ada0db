#include "bitopo/region.hpp"

#include <algorithm>
#include <stdexcept>

namespace bitopo {

Region Region::everything(std::shared_ptr<const std::vector<Dyadic>> carrier) {
  return Region{std::nullopt, std::nullopt, std::move(carrier)};
}

Region Region::above(Dyadic lo, std::shared_ptr<const std::vector<Dyadic>> carrier) {
  return Region{std::move(lo), std::nullopt, std::move(carrier)};
}

Region Region::below(Dyadic hi, std::shared_ptr<const std::vector<Dyadic>> carrier) {
  return Region{std::nullopt, std::move(hi), std::move(carrier)};
}

bool Region::in_carrier(const Dyadic& y) const {
  return !carrier || std::find(carrier->begin(), carrier->end(), y) != carrier->end();
}

bool Region::contains(const Dyadic& y) const {
  if (lo && !(*lo < y)) return false;
  if (hi && !(y < *hi)) return false;
  return in_carrier(y);
}

bool Region::empty() const {
  if (carrier) return std::none_of(carrier->begin(), carrier->end(), [&](const Dyadic& y) { return contains(y); });
  return lo && hi && !(*lo < *hi);
}

bool Region::subset_of(const Region& other) const {
  if (empty()) return true;
  if (carrier) return std::all_of(carrier->begin(), carrier->end(), [&](const Dyadic& y) { return !contains(y) || other.contains(y); });
  if (other.carrier) return false;
  if (other.lo && (!lo || *lo < *other.lo)) return false;
  if (other.hi && (!hi || *other.hi < *hi)) return false;
  return true;
}

bool Region::disjoint(const Region& other) const { return intersect(other).empty(); }

Region Region::intersect(const Region& other) const {
  Region r;
  r.carrier = carrier ? carrier : other.carrier;
  if (lo && other.lo) r.lo = max(*lo, *other.lo);
  else r.lo = lo ? lo : other.lo;
  if (hi && other.hi) r.hi = min(*hi, *other.hi);
  else r.hi = hi ? hi : other.hi;
  if (carrier && other.carrier) {
    auto both = std::make_shared<std::vector<Dyadic>>();
    for (const auto& y : *carrier)
      if (other.in_carrier(y)) both->push_back(y);
    r.carrier = both;
  }
  return r;
}

Dyadic random_dyadic(std::mt19937_64& rng, int span, int bits) {
  const auto width = static_cast<std::uint64_t>(span) << (bits + 1);
  const auto m = static_cast<long long>(rng() % (width + 1)) - static_cast<long long>(width / 2);
  return Dyadic(m, -bits);
}

namespace {

template <class Keep>
std::vector<Dyadic> sample_where(const Region& r, std::mt19937_64& rng, std::size_t count,
                                 const std::vector<Dyadic>& anchors, Keep keep) {
  std::vector<Dyadic> out;
  auto push = [&](const Dyadic& y) {
    if (out.size() < count && r.in_carrier(y) && keep(y) && std::find(out.begin(), out.end(), y) == out.end())
      out.push_back(y);
  };
  if (r.carrier) {
    for (const auto& y : *r.carrier) push(y);
    return out;
  }
  for (const auto& a : anchors) push(a);
  for (int k = 0; k < 24 && out.size() < count; ++k)
    for (const auto& a : anchors) {
      push(a - Dyadic::pow2(-k));
      push(a + Dyadic::pow2(-k));
    }
  for (int tries = 0; tries < 4096 && out.size() < count; ++tries) push(random_dyadic(rng, 8, 6));
  return out;
}

std::vector<Dyadic> anchors_of(const Region& r) {
  std::vector<Dyadic> a;
  if (r.lo) a.push_back(*r.lo);
  if (r.hi) a.push_back(*r.hi);
  if (a.empty()) a.push_back(Dyadic(0));
  return a;
}

}  // namespace

std::vector<Dyadic> Region::complement_samples(std::mt19937_64& rng, std::size_t count) const {
  return sample_where(*this, rng, count, anchors_of(*this), [&](const Dyadic& y) { return !contains(y); });
}

std::vector<Dyadic> Region::interior_samples(std::mt19937_64& rng, std::size_t count) const {
  return sample_where(*this, rng, count, anchors_of(*this), [&](const Dyadic& y) { return contains(y); });
}

std::string Region::to_string() const {
  std::string s = "(" + (lo ? lo->to_string() : std::string("-inf")) + "," + (hi ? hi->to_string() : std::string("inf")) + ")";
  if (carrier) {
    s += " & {";
    for (std::size_t k = 0; k < carrier->size(); ++k) s += (k ? "," : "") + (*carrier)[k].to_string();
    s += "}";
  }
  return s;
}

Region parse_region(const std::string& text) {
  std::string t;
  for (char c : text)
    if (c != ' ') t += c;
  if (t.size() < 5 || t.front() != '(' || t.back() != ')') throw std::invalid_argument("ball spec must look like (lo,hi): " + text);
  const auto comma = t.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("ball spec needs a comma: " + text);
  const std::string a = t.substr(1, comma - 1), b = t.substr(comma + 1, t.size() - comma - 2);
  Region r;
  if (a != "-inf") r.lo = Dyadic::parse(a);
  if (b != "inf" && b != "+inf") r.hi = Dyadic::parse(b);
  return r;
}

}  // namespace bitopo
