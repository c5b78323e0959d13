#include "tdesign/haar.hpp"

#include "tdesign/states.hpp"

#include <set>
#include <stdexcept>

namespace tdesign {

void Monomial::validate(std::uint64_t n_dim) const {
    if (terms.empty()) throw std::invalid_argument("monomial needs at least one term");
    std::set<std::uint32_t> seen;
    for (const auto& t : terms) {
        if (t.index >= n_dim) throw std::out_of_range("monomial index exceeds the dimension");
        if (!seen.insert(t.index).second)
            throw std::invalid_argument("monomial indices must be distinct");
    }
}

Rational haar_expectation(std::uint64_t n_dim, const Monomial& m) {
    m.validate(n_dim);
    if (!m.balanced()) return Rational(0);
    BigInt num = 1;
    unsigned d = 0;
    for (const auto& t : m.terms) {
        num *= factorial(t.c);
        d += t.c;
    }
    return Rational(num, rising_factorial(BigInt(n_dim), d));
}

std::uint64_t symmetric_dim(std::uint64_t n, unsigned t) {
    if (n < 1 || t < 1) throw std::invalid_argument("symmetric_dim: need N, t >= 1");
    // C(N+t-1, t) in exact arithmetic, checked against 64 bits
    BigInt r = 1;
    for (unsigned i = 1; i <= t; ++i) {
        r *= BigInt(n) + (t - i);
        r /= i;
    }
    if (r > BigInt(UINT64_MAX)) throw std::overflow_error("symmetric_dim exceeds 64 bits");
    return r.convert_to<std::uint64_t>();
}

std::uint64_t multiset_weight(const std::vector<std::uint32_t>& sorted_indices) {
    if (sorted_indices.empty()) throw std::invalid_argument("multiset_weight: empty multiset");
    BigInt denom = 1;
    unsigned run = 1;
    for (std::size_t i = 1; i < sorted_indices.size(); ++i) {
        if (sorted_indices[i] < sorted_indices[i - 1])
            throw std::invalid_argument("multiset_weight: indices must be sorted");
        if (sorted_indices[i] == sorted_indices[i - 1]) {
            ++run;
        } else {
            denom *= factorial(run);
            run = 1;
        }
    }
    denom *= factorial(run);
    const BigInt r = factorial(unsigned(sorted_indices.size())) / denom;
    if (r > BigInt(UINT64_MAX)) throw std::overflow_error("multiset_weight exceeds 64 bits");
    return r.convert_to<std::uint64_t>();
}

PureState sample_haar_state(Eigen::Index n, Rng& rng) {
    PureState s;
    s.amplitudes.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) s.amplitudes(i) = Complex(rng.gaussian(), rng.gaussian());
    s.amplitudes /= s.amplitudes.norm();
    return s;
}

Eigen::MatrixXcd sample_haar_unitary(Eigen::Index n, Rng& rng) {
    Eigen::MatrixXcd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Complex(rng.gaussian(), rng.gaussian());
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
        Complex diag = r(j, j);
        const double mag = std::abs(diag);
        q.col(j) *= (mag > 0) ? diag / mag : Complex(1.0, 0.0);
    }
    return q;
}

void DensityMatrix::validate(double herm_tol, double psd_tol, double trace_tol) const {
    if (entries.rows() != entries.cols()) throw std::invalid_argument("density matrix must be square");
    const double herm = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    if (herm > herm_tol) throw std::invalid_argument("density matrix is not Hermitian");
    const double trace_err = std::abs(entries.trace() - Complex(1.0, 0.0));
    if (trace_err > trace_tol) throw std::invalid_argument("density matrix trace differs from one");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(entries);
    if (es.eigenvalues().minCoeff() < -psd_tol)
        throw std::invalid_argument("density matrix is not positive semidefinite");
}

} // namespace tdesign
