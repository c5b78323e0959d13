#pragma once

#include "tdesign/random.hpp"

#include <Eigen/Dense>
#include <complex>

namespace tdesign {

using Complex = std::complex<double>;

struct PureState {
    Eigen::VectorXcd amplitudes;

    Eigen::Index dim() const { return amplitudes.size(); }
    double norm() const { return amplitudes.norm(); }

    static PureState basis(Eigen::Index n, Eigen::Index j) {
        PureState s;
        s.amplitudes = Eigen::VectorXcd::Zero(n);
        s.amplitudes(j) = 1.0;
        return s;
    }
    static PureState uniform(Eigen::Index n) {
        PureState s;
        s.amplitudes = Eigen::VectorXcd::Constant(n, Complex(1.0 / std::sqrt(double(n)), 0.0));
        return s;
    }
};

struct DensityMatrix {
    Eigen::MatrixXcd entries;

    Eigen::Index dim() const { return entries.rows(); }

    // Throws when the matrix is not Hermitian PSD with unit trace.
    void validate(double herm_tol = 1e-12, double psd_tol = 1e-10, double trace_tol = 1e-12) const;

    static DensityMatrix pure(const PureState& s) {
        return {s.amplitudes * s.amplitudes.adjoint()};
    }
    static DensityMatrix maximally_mixed(Eigen::Index n) {
        return {Eigen::MatrixXcd::Identity(n, n) / double(n)};
    }
};

// Uniform (Haar) state: normalized vector of iid standard complex gaussians.
PureState sample_haar_state(Eigen::Index n, Rng& rng);

// Haar unitary: QR of a complex gaussian matrix with the R-diagonal phases
// folded back into Q.
Eigen::MatrixXcd sample_haar_unitary(Eigen::Index n, Rng& rng);

} // namespace tdesign
