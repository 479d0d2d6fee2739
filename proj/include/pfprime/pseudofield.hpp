#pragma once

#include "pfprime/cyclotomic.hpp"
#include "pfprime/modpoly.hpp"
#include "pfprime/natural.hpp"
#include "pfprime/periodsys.hpp"
#include "pfprime/ring_arith.hpp"

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace pfprime {

/// (Z/NZ)[x]/(f) with generator the residue of x and sigma: x -> x^N.
class Pseudofield {
 public:
  explicit Pseudofield(ModPoly f) : f_(std::move(f)) {
    if (!f_.is_monic() || f_.degree() < 1) throw DomainError("Pseudofield: f must be monic of degree >= 1");
  }

  const Natural& modulus() const { return f_.modulus(); }
  const ModPoly& f() const { return f_; }
  std::uint64_t degree() const { return static_cast<std::uint64_t>(f_.degree()); }

 private:
  ModPoly f_;
};

struct AxiomsVerified {
  friend bool operator==(const AxiomsVerified&, const AxiomsVerified&) = default;
};
struct AxiomsRefuted {
  friend bool operator==(const AxiomsRefuted&, const AxiomsRefuted&) = default;
};
struct CompositeFound {
  Natural divisor;
  friend bool operator==(const CompositeFound&, const CompositeFound&) = default;
};
using AxiomVerdict = std::variant<AxiomsVerified, AxiomsRefuted, CompositeFound>;

struct AxiomReport {
  bool sigma_well_defined = false;    // f(x^N) = 0, so x -> x^N extends to a ring map
  bool sigma_power_identity = false;  // x^(N^d) = x
  std::map<std::uint64_t, UnitOutcome> unit_checks;
  AxiomVerdict verdict = AxiomsRefuted{};

  bool verified() const { return std::holds_alternative<AxiomsVerified>(verdict); }
};

/// x^(N^i) mod f for i = 0..count-1.
inline std::vector<ModPoly> frobenius_orbit(const Pseudofield& a, std::uint64_t count) {
  const ModPoly& f = a.f();
  const Natural& n = a.modulus();
  return detail::with_residue_ring(f, [&](const auto& rr) {
    std::vector<ModPoly> out;
    out.reserve(count);
    auto beta = rr.x();
    for (std::uint64_t i = 0; i < count; ++i) {
      out.emplace_back(n, rr.lower(beta));
      if (i + 1 < count) beta = rr.pow(beta, n);
    }
    return out;
  });
}

inline AxiomReport verify_axioms(const Pseudofield& a) {
  const ModPoly& f = a.f();
  const std::uint64_t d = a.degree();
  const auto beta = frobenius_orbit(a, d + 1);
  const ModPoly x = poly_rem(ModPoly::x(a.modulus()), f);

  AxiomReport report;
  report.sigma_well_defined = poly_compose_mod(f, beta[1], f).is_zero();
  report.sigma_power_identity = beta[d] == x;
  bool all_units = true;
  std::optional<Natural> factor;
  for (std::uint64_t l : small_prime_divisors(d)) {
    const UnitOutcome u = poly_is_unit_mod(beta[d / l] - x, f);
    if (const auto* fac = std::get_if<FactorOfN>(&u); fac && !factor) factor = fac->divisor;
    all_units = all_units && std::holds_alternative<Unit>(u);
    report.unit_checks.emplace(l, u);
  }
  if (factor) {
    report.verdict = CompositeFound{*factor};
  } else if (report.sigma_well_defined && report.sigma_power_identity && all_units) {
    report.verdict = AxiomsVerified{};
  } else {
    report.verdict = AxiomsRefuted{};
  }
  return report;
}

/// Raised when reduction modulo a prime divisor shows that A is not a
/// pseudofield.
class PseudofieldRefuted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The i in [0, d) with x^p = x^(N^i) modulo (p, f).
inline std::uint64_t frobenius_index_mod_p(const Pseudofield& a, const Natural& p) {
  if (!is_small_prime(p)) throw DomainError("frobenius_index_mod_p: p must be prime");
  if (!(a.modulus() % p).is_zero()) throw DomainError("frobenius_index_mod_p: p must divide N");
  const ModPoly fp = a.f().reduced_mod(p);
  const ModPoly target = poly_pow_mod(poly_rem(ModPoly::x(p), fp), p, fp);
  const auto beta = frobenius_orbit(a, a.degree());
  for (std::uint64_t i = 0; i < beta.size(); ++i) {
    if (beta[i].reduced_mod(p) == target) return i;
  }
  throw PseudofieldRefuted("frobenius_index_mod_p: x^" + p.str() + " is not x^(N^i) for any i < " +
                           std::to_string(a.degree()) + " modulo " + p.str());
}

/// Rabin's irreducibility test over F_p.
inline bool is_irreducible_mod_p(const ModPoly& f, const Natural& p) {
  if (!is_small_prime(p)) throw DomainError("is_irreducible_mod_p: p must be prime");
  if (!f.is_monic() || f.degree() < 1) throw DomainError("is_irreducible_mod_p: f must be monic of degree >= 1");
  const ModPoly fp = f.reduced_mod(p);
  const auto d = static_cast<std::uint64_t>(fp.degree());
  const ModPoly x = poly_rem(ModPoly::x(p), fp);
  // frob[i] = x^(p^i) mod fp
  std::vector<ModPoly> frob{x};
  for (std::uint64_t i = 1; i <= d; ++i) frob.push_back(poly_pow_mod(frob.back(), p, fp));
  if (frob[d] != x) return false;
  for (std::uint64_t l : small_prime_divisors(d)) {
    if (!std::holds_alternative<Unit>(poly_is_unit_mod(frob[d / l] - x, fp))) return false;
  }
  return true;
}

inline Pseudofield pseudofield_from_period_pair(const Natural& n, const PeriodPair& pair) {
  if (!is_period_pair(n, pair.r, pair.q)) throw DomainError("pseudofield_from_period_pair: not a period pair for N");
  return Pseudofield(period_polynomial(pair.r, pair.q, n));
}

struct TensorFailure {
  std::string note;
  friend bool operator==(const TensorFailure&, const TensorFailure&) = default;
};
using TensorOutcome = std::variant<Pseudofield, CompositeFound, TensorFailure>;

namespace detail {

/// Coordinates of x^k mod f for k = 0..count-1, each of length deg f.
template <class RR>
std::vector<typename RR::Vec> power_table(const RR& rr, std::size_t count) {
  std::vector<typename RR::Vec> out;
  out.reserve(count);
  auto p = rr.one();
  const auto x = rr.x();
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(p);
    p = rr.mul(p, x);
  }
  return out;
}

}  // namespace detail

/// Minimal polynomial of x (x) y in A1 (x) A2 by Gauss-Jordan elimination
/// over Z/NZ on the powers (x (x) y)^k, k = 0..d1*d2.
inline TensorOutcome tensor_product(const Pseudofield& a1, const Pseudofield& a2) {
  const Natural& n = a1.modulus();
  if (a2.modulus() != n) throw DomainError("tensor_product: moduli differ");
  const std::uint64_t d1 = a1.degree(), d2 = a2.degree();
  if (d1 < 2 || d2 < 2) throw DomainError("tensor_product: degrees must exceed 1");
  if (std::gcd(d1, d2) != 1) throw DomainError("tensor_product: degrees must be coprime");
  const std::uint64_t dim = d1 * d2;
  if (n <= Natural(dim)) throw DomainError("tensor_product: need N > d1*d2");

  return detail::with_ring(n, [&](auto ring) -> TensorOutcome {
    using Ring = decltype(ring);
    using elem = typename Ring::elem;
    const detail::ResidueRing<Ring> r1(ring, detail::monic_low(a1.f()));
    const detail::ResidueRing<Ring> r2(ring, detail::monic_low(a2.f()));
    const auto u = detail::power_table(r1, dim + 1);
    const auto v = detail::power_table(r2, dim + 1);

    // Row b = i*d2 + j; columns 0..dim-1 hold (x(x)y)^k, column dim holds -(x(x)y)^dim.
    std::vector<std::vector<elem>> m(dim, std::vector<elem>(dim + 1, ring.zero()));
    for (std::uint64_t k = 0; k <= dim; ++k) {
      for (std::uint64_t i = 0; i < d1; ++i) {
        for (std::uint64_t j = 0; j < d2; ++j) {
          const elem w = ring.mul(u[k][i], v[k][j]);
          m[i * d2 + j][k] = k == dim ? ring.neg(w) : w;
        }
      }
    }

    for (std::uint64_t c = 0; c < dim; ++c) {
      std::uint64_t piv = c;
      while (piv < dim && m[piv][c] == 0) ++piv;
      if (piv == dim) {
        return TensorFailure{"powers of x(x)y become dependent before degree " + std::to_string(dim)};
      }
      std::swap(m[piv], m[c]);
      const InverseOutcome inv = try_invert(ring.to_natural(m[c][c]), n);
      if (const auto* fac = std::get_if<FactorFound>(&inv)) return CompositeFound{fac->divisor};
      const elem s = ring.from(std::get<Inverse>(inv).value);
      for (auto& e : m[c]) e = ring.mul(e, s);
      for (std::uint64_t row = 0; row < dim; ++row) {
        if (row == c || m[row][c] == 0) continue;
        const elem factor = m[row][c];
        for (std::uint64_t col = c; col <= dim; ++col) m[row][col] = ring.sub(m[row][col], ring.mul(factor, m[c][col]));
      }
    }

    std::vector<Natural> coeffs;
    coeffs.reserve(dim + 1);
    for (std::uint64_t k = 0; k < dim; ++k) coeffs.push_back(ring.to_natural(m[k][dim]));
    coeffs.emplace_back(1);
    return Pseudofield(ModPoly(n, std::move(coeffs)));
  });
}

struct ConstructOptions {
  std::optional<PeriodSearchBounds> bounds;  // defaults to PeriodSearchBounds::desk(D)
  bool check_axioms = true;                  // verify every factor and the final product
};

struct Constructed {
  ModPoly f;
  PeriodSystem system;
};
struct CompositeDetected {
  std::optional<Natural> divisor;
  std::string reason;
};
struct SystemNotFound {};
struct ConstructionFailed {
  std::string note;
};
using ConstructionOutcome = std::variant<Constructed, CompositeDetected, SystemNotFound, ConstructionFailed>;

namespace detail {

inline std::optional<CompositeDetected> axiom_failure(const Pseudofield& a, const std::string& what) {
  const AxiomReport rep = verify_axioms(a);
  if (const auto* c = std::get_if<CompositeFound>(&rep.verdict)) {
    return CompositeDetected{c->divisor, "unit check on " + what + " exposed a factor"};
  }
  if (!rep.verified()) return CompositeDetected{std::nullopt, "pseudofield axioms fail for " + what};
  return std::nullopt;
}

inline std::string pair_name(const PeriodPair& p) {
  return "f_{" + std::to_string(p.r) + "," + std::to_string(p.q) + "}";
}

}  // namespace detail

/// Finds a period system of degree in [D, 2D), builds one pseudofield per
/// pair and folds them with tensor products.
inline ConstructionOutcome construct_poly_pipeline(const Natural& n, std::uint64_t target,
                                                   const ConstructOptions& options = {}) {
  if (target < 2) throw DomainError("construct_poly_pipeline: D must be >= 2");
  if (n <= Natural(2 * target)) throw DomainError("construct_poly_pipeline: need N > 2D");
  const auto system = find_period_system(n, target, options.bounds.value_or(PeriodSearchBounds::desk(target)));
  if (!system) return SystemNotFound{};

  std::optional<Pseudofield> acc;
  for (const auto& pair : system->pairs) {
    Pseudofield part = pseudofield_from_period_pair(n, pair);
    if (options.check_axioms) {
      if (auto bad = detail::axiom_failure(part, detail::pair_name(pair))) return *bad;
    }
    if (!acc) {
      acc = std::move(part);
      continue;
    }
    TensorOutcome t = tensor_product(*acc, part);
    if (auto* c = std::get_if<CompositeFound>(&t)) {
      return CompositeDetected{c->divisor, "elimination pivot shares a factor with N"};
    }
    if (auto* fail = std::get_if<TensorFailure>(&t)) return ConstructionFailed{fail->note};
    acc = std::get<Pseudofield>(std::move(t));
  }
  if (options.check_axioms && system->pairs.size() > 1) {
    if (auto bad = detail::axiom_failure(*acc, "the tensor product")) return *bad;
  }
  return Constructed{acc->f(), *system};
}

}  // namespace pfprime
