#include "tdesign/distinction.hpp"

#include "tdesign/haar.hpp"
#include "tdesign/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace tdesign {

namespace {

constexpr std::uint64_t kChunk = 4096;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 step over seed + golden-ratio stride
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace

std::vector<double> povm_distribution(const DesignEnsemble& ensemble, const DensityMatrix& rho,
                                      std::uint64_t size_budget) {
    rho.validate();
    if (std::uint64_t(rho.dim()) != ensemble.dim())
        throw std::invalid_argument("povm_distribution: dimension mismatch");
    if (ensemble.size() > size_budget)
        throw std::invalid_argument("povm_distribution: ensemble too large to materialize");
    const double n = double(ensemble.dim());
    std::vector<double> probs(std::size_t(ensemble.size()));
    for (std::uint64_t i = 0; i < ensemble.size(); ++i) {
        const Element el = ensemble.element(i);
        const Complex v = el.state.amplitudes.adjoint() * (rho.entries * el.state.amplitudes);
        probs[std::size_t(i)] = n * el.weight * v.real();
    }
    return probs;
}

std::vector<DistinctionReport> distinguish_many(
    const DesignEnsemble& ensemble,
    const std::vector<std::pair<DensityMatrix, DensityMatrix>>& pairs,
    std::optional<double> epsilon_hat) {
    if (pairs.empty()) return {};
    const std::uint64_t n = ensemble.dim();
    const std::size_t np = pairs.size();

    std::vector<Eigen::VectorXd> lambdas(np);
    std::vector<Eigen::MatrixXcd> bases(np);
    std::vector<DistinctionReport> reps(np);
    for (std::size_t p = 0; p < np; ++p) {
        pairs[p].first.validate();
        pairs[p].second.validate();
        if (pairs[p].first.dim() != pairs[p].second.dim() ||
            std::uint64_t(pairs[p].first.dim()) != ensemble.dim())
            throw std::invalid_argument("distinguish: dimension mismatch");
        const Eigen::MatrixXcd delta = pairs[p].first.entries - pairs[p].second.entries;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(delta);
        lambdas[p] = es.eigenvalues();
        bases[p] = es.eigenvectors();
        reps[p].n = n;
        reps[p].t = ensemble.order();
        reps[p].variant = variant_name(ensemble.variant());
        reps[p].frobenius = std::sqrt(delta.squaredNorm());
    }

    struct Moments {
        std::vector<double> abs_s, s2, s4;
    };
    Moments zero{std::vector<double>(np, 0.0), std::vector<double>(np, 0.0),
                 std::vector<double>(np, 0.0)};
    Moments total = chunked_reduce<Moments>(
        ensemble.size(), kChunk, zero,
        [&](std::uint64_t begin, std::uint64_t end, Moments& acc) {
            for (std::uint64_t i = begin; i < end; ++i) {
                const Element el = ensemble.element(i);
                for (std::size_t p = 0; p < np; ++p) {
                    double s = 0.0;
                    for (Eigen::Index k = 0; k < lambdas[p].size(); ++k) {
                        if (std::abs(lambdas[p](k)) < 1e-14) continue;
                        const Complex overlap = bases[p].col(k).adjoint() * el.state.amplitudes;
                        s += lambdas[p](k) * std::norm(overlap);
                    }
                    const double s2 = s * s;
                    acc.abs_s[p] += el.weight * std::abs(s);
                    acc.s2[p] += el.weight * s2;
                    acc.s4[p] += el.weight * s2 * s2;
                }
            }
        },
        [](Moments& a, const Moments& b) {
            for (std::size_t p = 0; p < a.abs_s.size(); ++p) {
                a.abs_s[p] += b.abs_s[p];
                a.s2[p] += b.s2[p];
                a.s4[p] += b.s4[p];
            }
        });

    for (std::size_t p = 0; p < np; ++p) {
        DistinctionReport& rep = reps[p];
        rep.s_abs = total.abs_s[p];
        rep.l1 = double(n) * total.abs_s[p];
        rep.s2 = total.s2[p];
        rep.s4 = total.s4[p];
        rep.berger = (rep.s4 > 0.0) ? berger_bound(rep.s2, rep.s4) : 0.0;
        if (epsilon_hat) {
            rep.epsilon_hat = epsilon_hat;
            const double f = rep.frobenius;
            const double eps = *epsilon_hat;
            const double nn = double(n);
            const double haar_s2 = f * f / (nn * (nn + 1.0));
            const double haar_s4_cap =
                9.0 * std::pow(f, 4.0) / (nn * (nn + 1.0) * (nn + 2.0) * (nn + 3.0));
            const double m2_lo = std::max(0.0, haar_s2 - 4.0 * eps / (nn * nn));
            const double m4_hi = haar_s4_cap + 48.0 * eps / std::pow(nn, 4.0);
            rep.l1_floor = (m4_hi > 0.0) ? nn * std::pow(m2_lo, 1.5) / std::sqrt(m4_hi) : 0.0;
            rep.delta_eps = 1.0 - rep.l1_floor / (f / 3.0);
            rep.premise_holds = eps < std::pow(f, 4.0);
        }
    }
    return reps;
}

DistinctionReport distinguish(const DesignEnsemble& ensemble, const DensityMatrix& rho1,
                              const DensityMatrix& rho2, std::optional<double> epsilon_hat) {
    return distinguish_many(ensemble, {{rho1, rho2}}, epsilon_hat).front();
}

double berger_bound(double m2, double m4) {
    if (m2 < 0.0) throw std::invalid_argument("berger_bound: negative second moment");
    if (m4 <= 0.0) {
        if (m2 == 0.0) return 0.0;
        throw std::domain_error("berger_bound: zero fourth moment with positive second moment");
    }
    return std::pow(m2, 1.5) / std::sqrt(m4);
}

BaselineResult haar_baseline(const DensityMatrix& rho1, const DensityMatrix& rho2,
                             unsigned trials, std::uint64_t seed) {
    rho1.validate();
    rho2.validate();
    if (rho1.dim() != rho2.dim()) throw std::invalid_argument("haar_baseline: dimension mismatch");
    if (trials < 1) throw std::invalid_argument("haar_baseline: need at least one trial");
    const Eigen::Index n = rho1.dim();
    const Eigen::MatrixXcd delta = rho1.entries - rho2.entries;

    struct Acc {
        double sum = 0.0, sumsq = 0.0;
    };
    Acc acc = chunked_reduce<Acc>(
        trials, 16, Acc{},
        [&](std::uint64_t begin, std::uint64_t end, Acc& a) {
            for (std::uint64_t trial = begin; trial < end; ++trial) {
                Rng rng(mix_seed(seed, trial));
                const Eigen::MatrixXcd basis = sample_haar_unitary(n, rng);
                double l1 = 0.0;
                for (Eigen::Index j = 0; j < n; ++j) {
                    const Complex v = basis.col(j).adjoint() * (delta * basis.col(j));
                    l1 += std::abs(v.real());
                }
                a.sum += l1;
                a.sumsq += l1 * l1;
            }
        },
        [](Acc& a, const Acc& b) {
            a.sum += b.sum;
            a.sumsq += b.sumsq;
        });

    BaselineResult out;
    out.trials = trials;
    out.mean = acc.sum / double(trials);
    if (trials > 1) {
        const double var = std::max(0.0, (acc.sumsq - acc.sum * acc.sum / double(trials)) / double(trials - 1));
        out.std_error = std::sqrt(var / double(trials));
    }
    return out;
}

double mub_counterexample(std::uint64_t n_prime) {
    const DesignEnsemble ens = DesignEnsemble::mub(n_prime);
    // two states of the same (computational) basis
    const DensityMatrix r1 = DensityMatrix::pure(PureState::basis(Eigen::Index(n_prime), 0));
    const DensityMatrix r2 = DensityMatrix::pure(PureState::basis(Eigen::Index(n_prime), 1));
    const DistinctionReport rep = distinguish(ens, r1, r2);
    return rep.l1;
}

} // namespace tdesign
