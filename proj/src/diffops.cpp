#include "fcpm/diffops.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fcpm {

namespace {

template <Scalar S>
bool scalar_less(const S& a, const S& b) {
  if constexpr (ExactScalar<S>) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  } else {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  }
}

template <Scalar S>
std::string show(const S& s) {
  if constexpr (ExactScalar<S>) {
    return to_string(s);
  } else {
    std::ostringstream os;
    os << s;
    return os.str();
  }
}

template <Scalar S>
int leading_axis(const ThetaFactor<S>& f) {
  for (std::size_t j = 0; j < f.weights.size(); ++j) {
    if (!is_zero(f.weights[j])) return static_cast<int>(j);
  }
  return static_cast<int>(f.weights.size());
}

}  // namespace

template <Scalar S>
S ThetaFactor<S>::eigenvalue(std::span<const S> exponents) const {
  S v = shift;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (!is_zero(weights[j])) v += weights[j] * exponents[j];
  }
  return v;
}

template <Scalar S>
bool ThetaFactor<S>::is_constant() const {
  return std::all_of(weights.begin(), weights.end(), [](const S& w) { return is_zero(w); });
}

template <Scalar S>
EulerOperator<S> EulerOperator<S>::theta(int m, int k, S shift) {
  ThetaFactor<S> f{std::vector<S>(static_cast<std::size_t>(m), S(0)), std::move(shift)};
  f.weights[static_cast<std::size_t>(k)] = S(1);
  EulerOperator op(m);
  op.add_term({S(1), std::vector<int>(static_cast<std::size_t>(m), 0), {std::move(f)}});
  return op;
}

template <Scalar S>
EulerOperator<S> EulerOperator<S>::constant(int m, S c) {
  EulerOperator op(m);
  op.add_term({std::move(c), std::vector<int>(static_cast<std::size_t>(m), 0), {}});
  return op;
}

template <Scalar S>
EulerOperator<S> EulerOperator<S>::monomial(int m, std::vector<int> beta, S c) {
  EulerOperator op(m);
  op.add_term({std::move(c), std::move(beta), {}});
  return op;
}

template <Scalar S>
void EulerOperator<S>::add_term(EulerTerm<S> term) {
  if (term.monomial.size() != static_cast<std::size_t>(m_)) throw std::invalid_argument("monomial needs m exponents");
  for (int b : term.monomial) {
    if (b < 0) throw std::invalid_argument("monomial exponents must be natural");
  }
  for (const auto& f : term.factors) {
    if (f.weights.size() != static_cast<std::size_t>(m_)) throw std::invalid_argument("factor needs m weights");
  }
  terms_.push_back(std::move(term));
}

template <Scalar S>
int EulerOperator<S>::order() const {
  int best = 0;
  for (const auto& t : terms_) {
    int ord = static_cast<int>(std::count_if(t.factors.begin(), t.factors.end(), [](const auto& f) { return !f.is_constant(); }));
    best = std::max(best, ord);
  }
  return best;
}

template <Scalar S>
int EulerOperator<S>::max_monomial_degree() const {
  int best = 0;
  for (const auto& t : terms_) {
    int deg = 0;
    for (int b : t.monomial) deg += b;
    best = std::max(best, deg);
  }
  return best;
}

template <Scalar S>
bool EulerOperator<S>::has_monomials() const {
  return max_monomial_degree() > 0;
}

template <Scalar S>
void EulerOperator<S>::normalize() {
  for (auto& t : terms_) {
    std::stable_sort(t.factors.begin(), t.factors.end(), [](const ThetaFactor<S>& x, const ThetaFactor<S>& y) {
      int ax = leading_axis(x);
      int ay = leading_axis(y);
      if (ax != ay) return ax < ay;
      return scalar_less(x.shift, y.shift);
    });
  }
}

template <Scalar S>
EulerOperator<S>& EulerOperator<S>::operator+=(const EulerOperator& o) {
  if (o.m_ != m_) throw std::invalid_argument("operators act on different numbers of variables");
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  return *this;
}

template <Scalar S>
EulerOperator<S>& EulerOperator<S>::operator-=(const EulerOperator& o) {
  if (o.m_ != m_) throw std::invalid_argument("operators act on different numbers of variables");
  for (auto t : o.terms_) {
    t.coefficient = -t.coefficient;
    terms_.push_back(std::move(t));
  }
  return *this;
}

template <Scalar S>
EulerOperator<S>& EulerOperator<S>::operator*=(const S& c) {
  for (auto& t : terms_) t.coefficient *= c;
  return *this;
}

template <Scalar S>
std::string EulerOperator<S>::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    if (i) os << " + ";
    os << "(" << show(t.coefficient) << ")";
    for (int k = 0; k < m_; ++k) {
      if (t.monomial[static_cast<std::size_t>(k)]) os << "*x" << k + 1 << "^" << t.monomial[static_cast<std::size_t>(k)];
    }
    for (const auto& f : t.factors) {
      os << "*(";
      bool first = true;
      for (int k = 0; k < m_; ++k) {
        if (is_zero(f.weights[static_cast<std::size_t>(k)])) continue;
        if (!first) os << " + ";
        os << show(f.weights[static_cast<std::size_t>(k)]) << "*θ" << k + 1;
        first = false;
      }
      os << " + " << show(f.shift) << ")";
    }
  }
  return os.str();
}

template <Scalar S>
EulerOperator<S> compose(const EulerOperator<S>& a, const EulerOperator<S>& b) {
  if (a.m() != b.m()) throw std::invalid_argument("operators act on different numbers of variables");
  EulerOperator<S> out(a.m());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      EulerTerm<S> t{ta.coefficient * tb.coefficient, ta.monomial, {}};
      std::vector<S> beta_b;
      for (std::size_t j = 0; j < tb.monomial.size(); ++j) {
        t.monomial[j] += tb.monomial[j];
        beta_b.push_back(S(tb.monomial[j]));
      }
      for (const auto& f : ta.factors) {
        ThetaFactor<S> g = f;
        g.shift = f.eigenvalue(beta_b);
        t.factors.push_back(std::move(g));
      }
      t.factors.insert(t.factors.end(), tb.factors.begin(), tb.factors.end());
      out.add_term(std::move(t));
    }
  }
  out.normalize();
  return out;
}

namespace {

template <Scalar S>
TruncatedSeries<S> apply_impl(const EulerOperator<S>& op, const TruncatedSeries<S>& s, double* scale,
                              bool polynomial = false) {
  if (op.m() != s.m()) throw std::invalid_argument("operator and series have different numbers of variables");
  const int out_order = polynomial ? s.order() + op.max_monomial_degree() : s.order() - op.max_monomial_degree();
  if (out_order < 0) throw std::invalid_argument("series too short for this operator");
  const auto& mu = s.prefactor_exponents();
  TruncatedSeries<S> out(s.m(), out_order, mu);
  std::vector<S> exps(static_cast<std::size_t>(s.m()));
  for (int d = 0; d <= out_order; ++d) {
    for (const auto& n : shell(s.m(), d)) {
      S acc(0);
      double mag = 0.0;
      for (const auto& t : op.terms()) {
        std::vector<int> gamma = n.n;
        bool inside = true;
        for (std::size_t j = 0; j < gamma.size(); ++j) {
          gamma[j] -= t.monomial[j];
          inside = inside && gamma[j] >= 0;
        }
        if (!inside) continue;
        MultiIndex g(std::move(gamma));
        if (!s.contains(g)) continue;
        const S& c = s[g];
        if (is_zero(c)) continue;
        for (std::size_t j = 0; j < exps.size(); ++j) exps[j] = S(g.n[j]) + mu[j];
        S v = t.coefficient * c;
        for (const auto& f : t.factors) v *= f.eigenvalue(exps);
        if (scale) mag += magnitude(v);
        acc += v;
      }
      if (scale) *scale = std::max(*scale, mag);
      out[n] = std::move(acc);
    }
  }
  return out;
}

}  // namespace

template <Scalar S>
TruncatedSeries<S> apply(const EulerOperator<S>& op, const TruncatedSeries<S>& s) {
  return apply_impl(op, s, nullptr);
}

template <Scalar S>
TruncatedSeries<S> apply_polynomial(const EulerOperator<S>& op, const TruncatedSeries<S>& s) {
  return apply_impl(op, s, nullptr, true);
}

template <Scalar S>
EulerOperator<S> operator_l(const ParameterSet<S>& ps, int k) {
  const int m = ps.m();
  if (k < 0 || k >= m) throw std::out_of_range("operator axis out of range");
  EulerTerm<S> left{S(1), std::vector<int>(static_cast<std::size_t>(m), 0), {}};
  for (int i = 0; i < ps.p(); ++i) {
    ThetaFactor<S> f{std::vector<S>(static_cast<std::size_t>(m), S(0)), ps.b(i, k) - S(1)};
    f.weights[static_cast<std::size_t>(k)] = S(1);
    left.factors.push_back(std::move(f));
  }
  EulerTerm<S> right{S(-1), std::vector<int>(static_cast<std::size_t>(m), 0), {}};
  right.monomial[static_cast<std::size_t>(k)] = 1;
  for (int i = 0; i < ps.p(); ++i) {
    right.factors.push_back({std::vector<S>(static_cast<std::size_t>(m), S(1)), ps.a(i)});
  }
  EulerOperator<S> op(m);
  op.add_term(std::move(left));
  op.add_term(std::move(right));
  op.normalize();
  return op;
}

template <Scalar S>
EulerOperator<S> pullback(const EulerOperator<S>& op, int p) {
  if (p < 1) throw std::invalid_argument("covering degree must be positive");
  EulerOperator<S> out(op.m());
  const S inv_p = S(1) / S(p);
  for (auto t : op.terms()) {
    for (int& b : t.monomial) b *= p;
    for (auto& f : t.factors) {
      for (auto& w : f.weights) w *= inv_p;
    }
    out.add_term(std::move(t));
  }
  return out;
}

template <Scalar S>
Residual annihilation_residual(const ParameterSet<S>& ps, const SolutionLabel& label, int order) {
  if (order < 1) throw std::invalid_argument("annihilation check needs order >= 1");
  auto series = phi_series(ps, label, order);
  Residual r;
  r.exact = ExactScalar<S>;
  bool all_zero = true;
  for (int k = 0; k < ps.m(); ++k) {
    auto out = apply_impl(operator_l(ps, k), series, &r.scale);
    for (const auto& c : out.coefficients()) {
      r.max_abs = std::max(r.max_abs, magnitude(c));
      all_zero = all_zero && is_zero(c);
    }
  }
  r.vanishes = r.exact ? all_zero : r.max_abs <= 1e-9 * r.scale;
  return r;
}

bool coefficient_recurrence_check(const ParameterSet<GaussRational>& ps, int order) {
  require_valid(ps);
  for (int d = 1; d <= order; ++d) {
    for (const auto& n : shell(ps.m(), d)) {
      const GaussRational an = coefficient_direct(ps, n);
      for (int k = 0; k < ps.m(); ++k) {
        if (n[k] < 1) continue;
        GaussRational lhs(n[k]);
        for (int j = 0; j + 1 < ps.p(); ++j) lhs *= ps.b(j, k) - GaussRational(1) + GaussRational(n[k]);
        lhs *= an;
        GaussRational rhs(1);
        for (int i = 0; i < ps.p(); ++i) rhs *= ps.a(i) + GaussRational(d - 1);
        rhs *= coefficient_direct(ps, n.lowered(k));
        if (!(lhs == rhs)) return false;
      }
    }
  }
  return true;
}

#define FCPM_INSTANTIATE(S)                                                                      \
  template struct ThetaFactor<S>;                                                                \
  template class EulerOperator<S>;                                                               \
  template EulerOperator<S> compose(const EulerOperator<S>&, const EulerOperator<S>&);           \
  template TruncatedSeries<S> apply(const EulerOperator<S>&, const TruncatedSeries<S>&);         \
  template TruncatedSeries<S> apply_polynomial(const EulerOperator<S>&, const TruncatedSeries<S>&); \
  template EulerOperator<S> operator_l(const ParameterSet<S>&, int);                             \
  template EulerOperator<S> pullback(const EulerOperator<S>&, int);                              \
  template Residual annihilation_residual(const ParameterSet<S>&, const SolutionLabel&, int);

FCPM_INSTANTIATE(GaussRational)
FCPM_INSTANTIATE(Complex)

#undef FCPM_INSTANTIATE

}  // namespace fcpm
