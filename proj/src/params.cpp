#include "fcpm/params.hpp"

#include <sstream>
#include <stdexcept>

#include "fcpm/errors.hpp"

namespace fcpm {

namespace {

std::string idx(int j, int k) { return "b_{" + std::to_string(j + 1) + "," + std::to_string(k + 1) + "}"; }

template <Scalar S>
std::string show(const S& s) {
  if constexpr (ExactScalar<S>) {
    return to_string(s);
  } else {
    std::ostringstream os;
    os.precision(17);
    os << "[" << s.real() << "," << s.imag() << "]";
    return os.str();
  }
}

template <Scalar S>
bool integral(const S& s) {
  return is_integral(s, kIntegralityTolerance);
}

}  // namespace

template <Scalar S>
ParameterSet<S>::ParameterSet(int p, int m, std::vector<S> a, std::vector<std::vector<S>> rows)
    : p_(p), m_(m), a_(std::move(a)), rows_(std::move(rows)) {
  if (p < 2) throw std::invalid_argument("p must be at least 2");
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  if (a_.size() != static_cast<std::size_t>(p)) {
    throw std::invalid_argument("a must have p = " + std::to_string(p) + " entries");
  }
  if (rows_.size() == static_cast<std::size_t>(p - 1)) {
    rows_.emplace_back(static_cast<std::size_t>(m), S(1));
  }
  if (rows_.size() != static_cast<std::size_t>(p)) {
    throw std::invalid_argument("B must have p or p-1 rows");
  }
  for (const auto& row : rows_) {
    if (row.size() != static_cast<std::size_t>(m)) {
      throw std::invalid_argument("every row of B must have m = " + std::to_string(m) + " entries");
    }
  }
}

template <Scalar S>
std::vector<S> ParameterSet<S>::column(int k) const {
  std::vector<S> col;
  col.reserve(rows_.size());
  for (const auto& row : rows_) col.push_back(row[static_cast<std::size_t>(k)]);
  return col;
}

template <Scalar S>
ParameterSet<Complex> ParameterSet<S>::to_float() const {
  std::vector<Complex> a;
  for (const auto& v : a_) a.push_back(to_complex(v));
  std::vector<std::vector<Complex>> rows;
  for (const auto& row : rows_) {
    auto& out = rows.emplace_back();
    for (const auto& v : row) out.push_back(to_complex(v));
  }
  return {p_, m_, std::move(a), std::move(rows)};
}

template <Scalar S>
std::vector<std::string> validate(const ParameterSet<S>& ps) {
  std::vector<std::string> out;
  for (int k = 0; k < ps.m(); ++k) {
    const S& last = ps.b(ps.p() - 1, k);
    bool unit = ExactScalar<S> ? is_zero(last - S(1)) : magnitude(last - S(1)) <= kIntegralityTolerance;
    if (!unit) out.push_back(idx(ps.p() - 1, k) + " = " + show(last) + " but the last row of B must be 1");
  }
  for (int j = 0; j + 1 < ps.p(); ++j) {
    for (int k = 0; k < ps.m(); ++k) {
      if (is_nonpositive_integer(ps.b(j, k), kIntegralityTolerance)) {
        out.push_back(idx(j, k) + " ∈ −ℕ");
      }
    }
  }
  return out;
}

template <Scalar S>
void require_valid(const ParameterSet<S>& ps) {
  auto violations = validate(ps);
  if (!violations.empty()) throw ValidationError("invalid parameter set", std::move(violations));
}

template <Scalar S>
NonIntegrality check_nonintegrality(const ParameterSet<S>& ps) {
  NonIntegrality r;
  r.heuristic = FloatScalar<S>;
  const int p = ps.p();
  const int m = ps.m();
  for (const auto& label : all_labels(p, m)) {
    S sum(0);
    for (int k = 0; k < m; ++k) sum += ps.b(label[k] - 1, k);
    for (int i = 0; i < p; ++i) {
      ++r.count_a;
      if (integral(ps.a(i) - sum)) {
        r.genericity_a = false;
        r.failures.push_back("a_" + std::to_string(i + 1) + " − Σ_k b_{j_k,k} ∈ ℤ for J=" + label.to_string());
      }
    }
  }
  for (int k = 0; k < m; ++k) {
    for (int j = 0; j < p; ++j) {
      for (int jp = j + 1; jp < p; ++jp) {
        ++r.count_b;
        if (integral(ps.b(j, k) - ps.b(jp, k))) {
          r.genericity_b = false;
          r.failures.push_back(idx(j, k) + " − " + idx(jp, k) + " ∈ ℤ");
        }
      }
    }
  }
  return r;
}

template <Scalar S>
void require_generic(const ParameterSet<S>& ps) {
  auto violations = validate(ps);
  auto ni = check_nonintegrality(ps);
  violations.insert(violations.end(), ni.failures.begin(), ni.failures.end());
  if (!violations.empty()) {
    throw ValidationError("parameters violate the non-integrality conditions", std::move(violations));
  }
}

SolutionLabel::SolutionLabel(int p, std::vector<int> entries) : p_(p), j_(std::move(entries)) {
  if (p < 2) throw std::invalid_argument("p must be at least 2");
  if (j_.empty()) throw std::invalid_argument("a solution label needs m >= 1 entries");
  for (int& j : j_) {
    if (j == 0) j = p;  // Z_p: 0 and p are the same class
    if (j < 1 || j > p) throw std::invalid_argument("label entry out of range 1..p: " + std::to_string(j));
  }
}

std::string SolutionLabel::to_string() const {
  std::string s = "(";
  for (std::size_t k = 0; k < j_.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(j_[k] == p_ ? 0 : j_[k]);
  }
  return s + ")";
}

std::vector<SolutionLabel> all_labels(int p, int m) {
  std::vector<SolutionLabel> out;
  std::vector<int> j(static_cast<std::size_t>(m), 1);
  while (true) {
    out.emplace_back(p, j);
    int k = m - 1;
    while (k >= 0 && j[static_cast<std::size_t>(k)] == p) j[static_cast<std::size_t>(k--)] = 1;
    if (k < 0) break;
    ++j[static_cast<std::size_t>(k)];
  }
  return out;
}

std::vector<int> reflection_vector(int p, int j) {
  if (j < 1 || j > p) throw std::out_of_range("reflection index out of range");
  std::vector<int> v(static_cast<std::size_t>(p), 1);
  v[static_cast<std::size_t>(j - 1)] += 1;
  v[static_cast<std::size_t>(p - 1)] -= 1;
  return v;
}

std::vector<std::vector<int>> reflection_gram(int p) {
  std::vector<std::vector<int>> w(static_cast<std::size_t>(p), std::vector<int>(static_cast<std::size_t>(p), -1));
  for (int i = 0; i < p; ++i) w[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = p - 1;
  return w;
}

template <Scalar S>
std::vector<S> eta(const std::vector<S>& column, int j) {
  const int p = static_cast<int>(column.size());
  if (j < 1 || j > p) throw std::out_of_range("eta index out of range 1..p");
  const S& last = column.back();
  bool unit = ExactScalar<S> ? is_zero(last - S(1)) : magnitude(last - S(1)) <= kIntegralityTolerance;
  if (!unit) throw std::invalid_argument("eta expects a column whose last entry is 1");
  if (j == p) return column;
  const S shift = S(1) - column[static_cast<std::size_t>(j - 1)];
  auto v = reflection_vector(p, j);
  std::vector<S> out = column;
  for (int i = 0; i < p; ++i) out[static_cast<std::size_t>(i)] += shift * S(v[static_cast<std::size_t>(i)]);
  return out;
}

template <Scalar S>
SolutionExponents<S> solution_exponents(const ParameterSet<S>& ps, const SolutionLabel& label) {
  if (label.p() != ps.p() || label.m() != ps.m()) throw std::invalid_argument("label shape does not match parameters");
  SolutionExponents<S> r{{}, S(0)};
  for (int k = 0; k < ps.m(); ++k) {
    S mu = label[k] == ps.p() ? S(0) : S(1) - ps.b(label[k] - 1, k);
    r.sigma += mu;
    r.mu.push_back(std::move(mu));
  }
  return r;
}

template <Scalar S>
ParameterSet<S> transformed_parameters(const ParameterSet<S>& ps, const SolutionLabel& label) {
  auto ex = solution_exponents(ps, label);
  std::vector<S> a = ps.a();
  for (auto& ai : a) ai += ex.sigma;
  std::vector<std::vector<S>> rows(static_cast<std::size_t>(ps.p()), std::vector<S>(static_cast<std::size_t>(ps.m())));
  for (int k = 0; k < ps.m(); ++k) {
    auto col = eta(ps.column(k), label[k]);
    for (int j = 0; j < ps.p(); ++j) rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = col[static_cast<std::size_t>(j)];
  }
  return {ps.p(), ps.m(), std::move(a), std::move(rows)};
}

template <Scalar S>
bool exponents_distinct(const ParameterSet<S>& ps) {
  std::vector<std::vector<S>> mus;
  for (const auto& label : all_labels(ps.p(), ps.m())) mus.push_back(solution_exponents(ps, label).mu);
  for (std::size_t i = 0; i < mus.size(); ++i) {
    for (std::size_t j = i + 1; j < mus.size(); ++j) {
      bool same = true;
      for (std::size_t k = 0; k < mus[i].size() && same; ++k) {
        same = ExactScalar<S> ? is_zero(mus[i][k] - mus[j][k]) : magnitude(mus[i][k] - mus[j][k]) <= kIntegralityTolerance;
      }
      if (same) return false;
    }
  }
  return true;
}

#define FCPM_INSTANTIATE(S)                                                                 \
  template class ParameterSet<S>;                                                           \
  template std::vector<std::string> validate(const ParameterSet<S>&);                       \
  template void require_valid(const ParameterSet<S>&);                                      \
  template NonIntegrality check_nonintegrality(const ParameterSet<S>&);                     \
  template void require_generic(const ParameterSet<S>&);                                    \
  template std::vector<S> eta(const std::vector<S>&, int);                                  \
  template SolutionExponents<S> solution_exponents(const ParameterSet<S>&, const SolutionLabel&); \
  template ParameterSet<S> transformed_parameters(const ParameterSet<S>&, const SolutionLabel&); \
  template bool exponents_distinct(const ParameterSet<S>&);

FCPM_INSTANTIATE(GaussRational)
FCPM_INSTANTIATE(Complex)

#undef FCPM_INSTANTIATE

}  // namespace fcpm
