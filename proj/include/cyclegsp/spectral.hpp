#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cyclegsp/cycle_cover.hpp"
#include "cyclegsp/graph.hpp"
#include "cyclegsp/image.hpp"

namespace cyclegsp {

/// Bin k is frequency k/n cycles per sample.
using Spectrum = std::vector<std::complex<double>>;

/// Unnormalised forward DFT, evaluated directly in O(n^2). Throws TooShort
/// on an empty signal.
Spectrum dft(std::span<const double> signal);
/// Inverse with the 1/n factor; returns the real part.
std::vector<double> idft(const Spectrum& spectrum);

/// 2 - 2 cos(2 pi k / n) in bin order. Throws TooShort for n < 3.
std::vector<double> cycle_laplacian_eigenvalues(int n);

/// Scales bin k by 1 / (1 + gamma * lambda_k) of the unweighted n-cycle.
std::vector<double> tikhonov_denoise_cycle(std::span<const double> signal, double gamma);

struct GftBasis {
    /// Ascending.
    Eigen::VectorXd eigenvalues;
    /// Orthonormal columns matching eigenvalues.
    Eigen::MatrixXd eigenvectors;
};

inline constexpr int kDefaultGftCap = 8192;

/// Dense eigendecomposition of laplacian(g). Throws TooLarge above cap.
GftBasis gft_basis(const Graph& g, int cap = kDefaultGftCap);

/// Throw DimensionMismatch.
Eigen::VectorXd gft(const GftBasis& basis, const Eigen::VectorXd& signal);
Eigen::VectorXd igft(const GftBasis& basis, const Eigen::VectorXd& coeffs);

Eigen::VectorXd tikhonov_denoise_graph(const GftBasis& basis, const Eigen::VectorXd& signal, double gamma);
Eigen::VectorXd tikhonov_denoise_graph(const Graph& g, const Eigen::VectorXd& signal, double gamma,
                                       int cap = kDefaultGftCap);

/// Filters each cycle of the cover independently along its traversal
/// order. A chain is mirrored into a cycle of twice its length first and
/// the first half is kept. Pruned vertices are copied unchanged. Throws
/// CoverMismatch unless cycles, chains and uncovered partition the pixels.
ImageSignal denoise_image_vcc(const ImageSignal& img, const CycleCover& cover, double gamma);

/// Whole-image GFT filtering on the given lattice.
ImageSignal denoise_image_gft(const ImageSignal& img, const Graph& lattice, double gamma, int cap = kDefaultGftCap);
ImageSignal denoise_image_gft(const ImageSignal& img, const GftBasis& basis, double gamma);

/// 10 log10(255^2 / MSE); +inf for identical images. Throws
/// DimensionMismatch.
double psnr(const ImageSignal& a, const ImageSignal& b);

}  // namespace cyclegsp
