#include "eqnoeth/wreath.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "eqnoeth/parallel.hpp"

namespace eqnoeth {

LampWreath lamp_wreath(const FiniteGroup& top) { return LampWreath(FiniteCarrier{top}, IntegerLine{}); }

NestedWreath nested_wreath(const FiniteGroup& outer_top, const FiniteGroup& inner_top) {
  return NestedWreath(FiniteCarrier{outer_top}, lamp_wreath(inner_top));
}

// ---------------------------------------------------------------------------
// Spread witnesses

std::vector<LampWreath::Element> window_subgroup(const LampWreath& w, int n) {
  if (n < 0) throw WreathError("window radius must be nonnegative");
  const int q = w.top().group.order();
  const int width = 2 * n + 1;
  std::size_t total = 1;
  for (int i = 0; i < width; ++i) {
    total *= static_cast<std::size_t>(q);
    if (total > (std::size_t{1} << 22)) throw WreathError("window subgroup too large to enumerate");
  }
  std::vector<LampWreath::Element> out;
  out.reserve(total);
  for (std::size_t code = 0; code < total; ++code) {
    LampWreath::Function f;
    std::size_t c = code;
    for (int j = -n; j <= n; ++j) {
      f[j] = static_cast<int>(c % q);
      c /= q;
    }
    out.push_back(w.make(std::move(f), 0));
  }
  return out;
}

LampWreath::Element window_edge(const LampWreath& w, int n, int g) {
  if (g <= 0 || g >= w.top().group.order()) throw WreathError("window edge needs a non-identity top element");
  return w.make({{n + 1, g}}, 0);
}

std::vector<SpreadWitness> non_noetherian_witnesses(int N, int g) {
  if (N < 0) throw WreathError("depth must be nonnegative");
  const FiniteGroup c2 = cyclic_group(2);
  if (g < 0 || g >= 2) throw WreathError("top element must be 0 or 1 in C_2");
  const NestedWreath outer = nested_wreath(c2, c2);
  const LampWreath& inner = outer.base();
  const auto id = outer.identity();

  std::vector<SpreadWitness> out;
  for (int n = 0; n <= N; ++n) {
    const auto kn = window_subgroup(inner, n);
    SpreadWitness sw;
    sw.n = n;
    sw.subgroup_order = kn.size();
    sw.witness = spread(outer, g, kn);
    sw.commutes_with_prior = true;
    for (int i = 0; i <= n; ++i) {
      const auto h = outer.base_element(window_edge(inner, i));
      if (!(wreath_commutator(outer, sw.witness, h) == id)) {
        if (i < n) sw.commutes_with_prior = false;
        if (sw.first_failure < 0) sw.first_failure = i;
      }
    }
    sw.commutes_with_subgroup = std::all_of(kn.begin(), kn.end(), [&](const auto& k) {
      return wreath_commutator(outer, sw.witness, outer.base_element(k)) == id;
    });
    out.push_back(std::move(sw));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Membership

namespace {

template <class K>
long long lcm_of_orders(const FiniteGroup& g, const std::map<K, int>& f) {
  long long l = 1;
  for (const auto& kv : f) l = std::lcm(l, static_cast<long long>(g.element_order(kv.second)));
  return l;
}

template <class W>
Membership scan_powers(const W& w, const typename W::Element& x, const typename W::Element& y, long long order,
                       long long bound) {
  Membership m;
  auto p = w.identity();
  const long long limit = std::min(order, bound + 1);
  for (long long k = 0; k < limit; ++k) {
    ++m.searched;
    if (p == y) {
      m.status = Membership::Status::Member;
      m.exponent = k;
      m.complete = true;
      return m;
    }
    p = w.multiply(p, x);
  }
  m.complete = limit == order;
  m.status = m.complete ? Membership::Status::NonMember : Membership::Status::Exhausted;
  return m;
}

}  // namespace

Membership cyclic_membership(const LampWreath& w, const LampWreath::Element& x, const LampWreath::Element& y,
                             long long bound) {
  if (bound < 1) throw WreathError("membership bound must be at least 1");
  Membership m;
  const long long a = x.point, c = y.point;
  if (a != 0) {
    m.complete = true;
    if (c % a != 0) {
      m.status = Membership::Status::NonMember;
      return m;
    }
    const long long p = c / a;
    m.searched = 1;
    if (wreath_power(w, x, p) == y) {
      m.status = Membership::Status::Member;
      m.exponent = p;
    } else {
      m.status = Membership::Status::NonMember;
    }
    return m;
  }
  if (c != 0) {
    m.complete = true;
    m.status = Membership::Status::NonMember;
    return m;
  }
  // x lies in the base, so its order is the lcm of its values' orders.
  return scan_powers(w, x, y, lcm_of_orders(w.top().group, x.support), bound);
}

Membership cyclic_membership(const FiniteWreath& w, const FiniteWreath::Element& x,
                             const FiniteWreath::Element& y, long long bound) {
  if (bound < 1) throw WreathError("membership bound must be at least 1");
  const FiniteGroup& h = w.base().group;
  const long long n = h.element_order(x.point);
  const auto xn = wreath_power(w, x, n);  // (g, 1)
  const long long order = n * lcm_of_orders(w.top().group, xn.support);
  return scan_powers(w, x, y, order, std::max(bound, order));
}

// ---------------------------------------------------------------------------
// Separability

namespace {

long long mod(long long x, long long n) { return ((x % n) + n) % n; }

FiniteWreath::Element project_lamp(const FiniteWreath& q, const LampWreath::Element& e, long long modulus,
                                   const Homomorphism& pb) {
  FiniteWreath::Function f;
  for (const auto& [k, v] : e.support) {
    int key = static_cast<int>(mod(k, modulus));
    auto it = f.find(key);
    if (it == f.end())
      f.emplace(key, pb(v));
    else
      it->second = q.top().multiply(it->second, pb(v));
  }
  return q.make(std::move(f), static_cast<int>(mod(e.point, modulus)));
}

FiniteWreath::Element project_finite(const FiniteWreath& q, const FiniteWreath::Element& e, const Homomorphism& ph,
                                     const Homomorphism& pb) {
  FiniteWreath::Function f;
  for (const auto& [k, v] : e.support) {
    int key = ph(k);
    auto it = f.find(key);
    if (it == f.end())
      f.emplace(key, pb(v));
    else
      it->second = q.top().multiply(it->second, pb(v));
  }
  return q.make(std::move(f), ph(e.point));
}

// Lists powers of px until the cycle closes; returns the order if py is not
// among them and 0 otherwise.
long long excluded(const FiniteWreath& q, const FiniteWreath::Element& px, const FiniteWreath::Element& py) {
  auto p = q.identity();
  long long k = 0;
  do {
    if (p == py) return 0;
    p = q.multiply(p, px);
    ++k;
  } while (!(p == q.identity()));
  return k;
}

template <class W>
void check_membership(SeparabilityCertificate& cert, const Membership& m) {
  if (m.status == Membership::Status::Member) {
    cert.status = SeparabilityCertificate::Status::IsPower;
    cert.power = m.exponent;
  } else if (m.status == Membership::Status::Exhausted) {
    throw WreathError("could not confirm that the element is not a power; raise the membership bound");
  }
}

}  // namespace

long long recipe_modulus(const LampWreath& w, const LampWreath::Element& x, const LampWreath::Element& y) {
  const long long a = x.point, c = y.point;
  std::set<long long> pts;
  auto span = [&]() { return *pts.rbegin() - *pts.begin() + 1; };
  if (a != 0) {
    if (c % a != 0) return a < 0 ? -a : a;
    const auto fhat = wreath_power(w, x, c / a);
    for (const auto& kv : fhat.support) pts.insert(kv.first);
    for (const auto& kv : y.support) pts.insert(kv.first);
    const long long s = static_cast<long long>(fhat.support.size() + y.support.size());
    for (long long i = 0; i <= s; ++i) pts.insert(a * i);
    return span();
  }
  if (c != 0) {
    long long n = 2;
    while (c % n == 0) ++n;
    return n;
  }
  pts.insert(0);
  for (const auto& kv : x.support) pts.insert(kv.first);
  for (const auto& kv : y.support) pts.insert(kv.first);
  return span();
}

SeparabilityCertificate separability_certificate(const LampWreath& w, const LampWreath::Element& x,
                                                 const LampWreath::Element& y, const SeparabilityLimits& limits) {
  SeparabilityCertificate cert;
  check_membership<LampWreath>(cert, cyclic_membership(w, x, y, limits.membership_bound));
  if (cert.status == SeparabilityCertificate::Status::IsPower) return cert;
  const FiniteGroup& g = w.top().group;
  if (g.is_abelian()) cert.recipe_modulus = recipe_modulus(w, x, y);
  const auto normals = normal_subgroups(g);
  for (long long n = 1; n <= limits.max_n; ++n) {
    const FiniteGroup qh = cyclic_group(static_cast<int>(n));
    for (const auto& b : normals) {
      auto qb = quotient(g, b);
      if (n > 1 && !qb.group.is_abelian()) continue;
      ++cert.candidates;
      const FiniteWreath q(FiniteCarrier{qb.group}, FiniteCarrier{qh});
      const long long order = excluded(q, project_lamp(q, x, n, qb.projection), project_lamp(q, y, n, qb.projection));
      if (order > 0) {
        cert.status = SeparabilityCertificate::Status::Certified;
        cert.B = b.elements();
        cert.modulus = n;
        cert.top_quotient_order = qb.group.order();
        cert.base_quotient_order = static_cast<int>(n);
        cert.image_order = order;
        return cert;
      }
    }
  }
  cert.status = SeparabilityCertificate::Status::Exhausted;
  return cert;
}

SeparabilityCertificate separability_certificate(const FiniteWreath& w, const FiniteWreath::Element& x,
                                                 const FiniteWreath::Element& y, const SeparabilityLimits& limits) {
  SeparabilityCertificate cert;
  check_membership<FiniteWreath>(cert, cyclic_membership(w, x, y, limits.membership_bound));
  if (cert.status == SeparabilityCertificate::Status::IsPower) return cert;
  const FiniteGroup& g = w.top().group;
  const FiniteGroup& h = w.base().group;
  const auto gnormals = normal_subgroups(g);
  for (const auto& nsub : normal_subgroups(h)) {
    auto qh = quotient(h, nsub);
    for (const auto& b : gnormals) {
      auto qb = quotient(g, b);
      if (!nsub.is_trivial() && !qb.group.is_abelian()) continue;
      ++cert.candidates;
      const FiniteWreath q(FiniteCarrier{qb.group}, FiniteCarrier{qh.group});
      const long long order = excluded(q, project_finite(q, x, qh.projection, qb.projection),
                                       project_finite(q, y, qh.projection, qb.projection));
      if (order > 0) {
        cert.status = SeparabilityCertificate::Status::Certified;
        cert.B = b.elements();
        cert.N = nsub.elements();
        cert.top_quotient_order = qb.group.order();
        cert.base_quotient_order = qh.group.order();
        cert.image_order = order;
        return cert;
      }
    }
  }
  cert.status = SeparabilityCertificate::Status::Exhausted;
  return cert;
}

// ---------------------------------------------------------------------------
// Independent verification on dense arrays.

namespace {

struct Dense {
  std::vector<int> values;  // indexed by H/N element
  int point = 0;
  bool operator==(const Dense&) const = default;
};

bool dense_excluded(const FiniteGroup& qg, const FiniteGroup& qh, const Dense& x, const Dense& y) {
  const int n = qh.order();
  auto mul = [&](const Dense& u, const Dense& v) {
    Dense r;
    r.values.resize(n);
    const int bi = qh.inverse(v.point);
    for (int t = 0; t < n; ++t) r.values[t] = qg.multiply(u.values[qh.multiply(t, bi)], v.values[t]);
    r.point = qh.multiply(u.point, v.point);
    return r;
  };
  const Dense id{std::vector<int>(n, 0), 0};
  Dense p = id;
  do {
    if (p == y) return false;
    p = mul(p, x);
  } while (!(p == id));
  return true;
}

}  // namespace

bool verify_certificate(const LampWreath& w, const LampWreath::Element& x, const LampWreath::Element& y,
                        const SeparabilityCertificate& c) {
  if (c.status != SeparabilityCertificate::Status::Certified || c.modulus < 1) return false;
  const FiniteGroup& g = w.top().group;
  Subgroup b(g, c.B);
  if (!is_normal(b)) return false;
  auto qb = quotient(g, b);
  if (c.modulus > 1 && !qb.group.is_abelian()) return false;
  const int n = static_cast<int>(c.modulus);
  auto dense = [&](const LampWreath::Element& e) {
    Dense d{std::vector<int>(n, 0), static_cast<int>(mod(e.point, n))};
    for (const auto& [k, v] : e.support) {
      auto& slot = d.values[mod(k, n)];
      slot = qb.group.multiply(slot, qb.projection(v));
    }
    return d;
  };
  return dense_excluded(qb.group, cyclic_group(n), dense(x), dense(y));
}

bool verify_certificate(const FiniteWreath& w, const FiniteWreath::Element& x, const FiniteWreath::Element& y,
                        const SeparabilityCertificate& c) {
  if (c.status != SeparabilityCertificate::Status::Certified) return false;
  const FiniteGroup& g = w.top().group;
  const FiniteGroup& h = w.base().group;
  Subgroup b(g, c.B), nsub(h, c.N);
  if (!is_normal(b) || !is_normal(nsub)) return false;
  auto qb = quotient(g, b);
  auto qh = quotient(h, nsub);
  if (!nsub.is_trivial() && !qb.group.is_abelian()) return false;
  auto dense = [&](const FiniteWreath::Element& e) {
    Dense d{std::vector<int>(qh.group.order(), 0), qh.projection(e.point)};
    for (const auto& [k, v] : e.support) {
      auto& slot = d.values[qh.projection(k)];
      slot = qb.group.multiply(slot, qb.projection(v));
    }
    return d;
  };
  return dense_excluded(qb.group, qh.group, dense(x), dense(y));
}

// ---------------------------------------------------------------------------
// Finite tables

int FiniteWreathTable::encode(const FiniteWreath::Element& e) const {
  const int ng = wreath.top().group.order(), nh = wreath.base().group.order();
  long long code = 0, place = nh;
  std::vector<int> dense(nh, 0);
  for (const auto& [k, v] : e.support) dense[k] = v;
  code = e.point;
  for (int x = 0; x < nh; ++x) {
    code += place * dense[x];
    place *= ng;
  }
  return static_cast<int>(code);
}

FiniteWreath::Element FiniteWreathTable::decode(int index) const {
  const int ng = wreath.top().group.order(), nh = wreath.base().group.order();
  FiniteWreath::Function f;
  const int point = index % nh;
  index /= nh;
  for (int x = 0; x < nh; ++x) {
    if (index % ng) f[x] = index % ng;
    index /= ng;
  }
  return wreath.make(std::move(f), point);
}

FiniteWreathTable finite_wreath_table(const FiniteGroup& g, const FiniteGroup& h) {
  const int ng = g.order(), nh = h.order();
  long long total = nh;
  for (int i = 0; i < nh; ++i) {
    total *= ng;
    if (total > 4096) throw WreathError("finite wreath product too large for a table");
  }
  const int n = static_cast<int>(total);
  // Dense decode: values[x] for each element, then point.
  std::vector<std::vector<int>> vals(n, std::vector<int>(nh));
  std::vector<int> pts(n);
  for (int u = 0; u < n; ++u) {
    int c = u;
    pts[u] = c % nh;
    c /= nh;
    for (int x = 0; x < nh; ++x) {
      vals[u][x] = c % ng;
      c /= ng;
    }
  }
  std::vector<int> flat(static_cast<std::size_t>(n) * n);
  parallel_chunks(static_cast<std::size_t>(n), [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t u = begin; u < end; ++u)
      for (int v = 0; v < n; ++v) {
        const int bi = h.inverse(pts[v]);
        long long code = h.multiply(pts[u], pts[v]), place = nh;
        for (int x = 0; x < nh; ++x) {
          code += place * g.multiply(vals[u][h.multiply(x, bi)], vals[v][x]);
          place *= ng;
        }
        flat[u * n + v] = static_cast<int>(code);
      }
  });
  return {FiniteGroup::trusted(std::move(flat), n), FiniteWreath(FiniteCarrier{g}, FiniteCarrier{h})};
}

// ---------------------------------------------------------------------------
// JSON

namespace {

long long json_integer(const nlohmann::json& j, const char* what) {
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == s.size() && !s.empty()) return v;
  }
  throw WreathError(std::string("expected an integer for ") + what + ", got " + j.dump());
}

template <class W, class KeyCheck>
typename W::Element element_from_json(const W& w, const nlohmann::json& j, const KeyCheck& key_ok) {
  if (!j.is_object() || !j.contains("support") || !j.contains("point"))
    throw WreathError("wreath element needs \"support\" and \"point\"");
  const int ng = w.top().group.order();
  typename W::Function f;
  for (const auto& [k, v] : j.at("support").items()) {
    const long long key = json_integer(nlohmann::json(k), "support key");
    const long long val = json_integer(v, "support value");
    if (!key_ok(key)) throw WreathError("support key " + k + " is not an element of H");
    if (val < 0 || val >= ng) throw WreathError("support value " + v.dump() + " is not an element of G");
    f[static_cast<typename W::PointElement>(key)] = static_cast<int>(val);
  }
  const long long point = json_integer(j.at("point"), "point");
  if (!key_ok(point)) throw WreathError("point is not an element of H");
  return w.make(std::move(f), static_cast<typename W::PointElement>(point));
}

}  // namespace

LampWreath::Element lamp_element_from_json(const LampWreath& w, const nlohmann::json& j) {
  return element_from_json(w, j, [](long long) { return true; });
}

FiniteWreath::Element finite_wreath_element_from_json(const FiniteWreath& w, const nlohmann::json& j) {
  const int nh = w.base().group.order();
  return element_from_json(w, j, [nh](long long k) { return k >= 0 && k < nh; });
}

nlohmann::json lamp_element_to_json(const LampWreath::Element& e) {
  nlohmann::json s = nlohmann::json::object();
  for (const auto& [k, v] : e.support) s[std::to_string(k)] = std::to_string(v);
  return {{"support", s}, {"point", std::to_string(e.point)}};
}

nlohmann::json finite_wreath_element_to_json(const FiniteWreath::Element& e) {
  nlohmann::json s = nlohmann::json::object();
  for (const auto& [k, v] : e.support) s[std::to_string(k)] = std::to_string(v);
  return {{"support", s}, {"point", std::to_string(e.point)}};
}

}  // namespace eqnoeth
