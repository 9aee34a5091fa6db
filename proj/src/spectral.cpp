#include "cyclegsp/spectral.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cyclegsp/error.hpp"

namespace cyclegsp {

namespace {

// twiddle[j] = exp(-2 pi i j / n); indexing by (k * j) mod n keeps the
// angles small and the rounding independent of k.
std::vector<std::complex<double>> twiddles(std::size_t n)
{
    std::vector<std::complex<double>> t(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double a = -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        t[j] = {std::cos(a), std::sin(a)};
    }
    return t;
}

void check_gamma(double gamma)
{
    if (!(gamma >= 0.0))
        throw std::invalid_argument("gamma must be non-negative");
}

}  // namespace

Spectrum dft(std::span<const double> signal)
{
    const std::size_t n = signal.size();
    if (n == 0)
        throw Error(ErrorCode::TooShort, "empty signal");
    const auto t = twiddles(n);
    Spectrum out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            acc += signal[j] * t[(k * j) % n];
        out[k] = acc;
    }
    return out;
}

std::vector<double> idft(const Spectrum& spectrum)
{
    const std::size_t n = spectrum.size();
    if (n == 0)
        throw Error(ErrorCode::TooShort, "empty spectrum");
    const auto t = twiddles(n);
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::complex<double> acc = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            acc += spectrum[k] * std::conj(t[(k * j) % n]);
        out[j] = acc.real() / static_cast<double>(n);
    }
    return out;
}

std::vector<double> cycle_laplacian_eigenvalues(int n)
{
    if (n < 3)
        throw Error(ErrorCode::TooShort, "cycle of length " + std::to_string(n));
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k)
        out[k] = 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * k / n);
    return out;
}

std::vector<double> tikhonov_denoise_cycle(std::span<const double> signal, double gamma)
{
    check_gamma(gamma);
    const auto lambda = cycle_laplacian_eigenvalues(static_cast<int>(signal.size()));
    if (gamma == 0.0)
        return {signal.begin(), signal.end()};
    auto s = dft(signal);
    for (std::size_t k = 1; k < s.size(); ++k)
        s[k] /= 1.0 + gamma * lambda[k];
    return idft(s);
}

GftBasis gft_basis(const Graph& g, int cap)
{
    if (g.vertex_count() > cap)
        throw Error(ErrorCode::TooLarge,
                    std::to_string(g.vertex_count()) + " vertices exceeds GFT cap " + std::to_string(cap));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian(g));
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("Laplacian eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::VectorXd gft(const GftBasis& basis, const Eigen::VectorXd& signal)
{
    if (signal.size() != basis.eigenvectors.rows())
        throw Error(ErrorCode::DimensionMismatch, "signal length differs from graph size");
    return basis.eigenvectors.transpose() * signal;
}

Eigen::VectorXd igft(const GftBasis& basis, const Eigen::VectorXd& coeffs)
{
    if (coeffs.size() != basis.eigenvectors.cols())
        throw Error(ErrorCode::DimensionMismatch, "coefficient count differs from basis size");
    return basis.eigenvectors * coeffs;
}

Eigen::VectorXd tikhonov_denoise_graph(const GftBasis& basis, const Eigen::VectorXd& signal, double gamma)
{
    check_gamma(gamma);
    Eigen::VectorXd c = gft(basis, signal);
    for (Eigen::Index k = 0; k < c.size(); ++k)
        c[k] /= 1.0 + gamma * std::max(basis.eigenvalues[k], 0.0);
    return igft(basis, c);
}

Eigen::VectorXd tikhonov_denoise_graph(const Graph& g, const Eigen::VectorXd& signal, double gamma, int cap)
{
    if (signal.size() != g.vertex_count())
        throw Error(ErrorCode::DimensionMismatch, "signal length differs from graph size");
    return tikhonov_denoise_graph(gft_basis(g, cap), signal, gamma);
}

ImageSignal denoise_image_vcc(const ImageSignal& img, const CycleCover& cover, double gamma)
{
    check_gamma(gamma);
    const auto n = static_cast<VertexId>(img.size());
    std::vector<char> seen(img.size(), 0);
    auto claim = [&](VertexId v) {
        if (v < 0 || v >= n)
            throw Error(ErrorCode::CoverMismatch, "vertex " + std::to_string(v) + " outside the image");
        if (seen[v]++)
            throw Error(ErrorCode::CoverMismatch, "vertex " + std::to_string(v) + " listed twice");
    };

    ImageSignal out = img;
    std::vector<double> buf;
    for (const auto& cyc : cover.cycles) {
        if (cyc.size() < 3)
            throw Error(ErrorCode::CoverMismatch, "cycle shorter than 3");
        buf.clear();
        for (VertexId v : cyc) {
            claim(v);
            buf.push_back(img.pixels[v]);
        }
        const auto f = tikhonov_denoise_cycle(buf, gamma);
        for (std::size_t i = 0; i < cyc.size(); ++i)
            out.pixels[cyc[i]] = f[i];
    }
    for (const auto& chain : cover.chains) {
        for (VertexId v : chain)
            claim(v);
        if (chain.size() < 2)
            continue;
        buf.clear();
        for (VertexId v : chain)
            buf.push_back(img.pixels[v]);
        for (auto it = chain.rbegin(); it != chain.rend(); ++it)
            buf.push_back(img.pixels[*it]);
        const auto f = tikhonov_denoise_cycle(buf, gamma);
        for (std::size_t i = 0; i < chain.size(); ++i)
            out.pixels[chain[i]] = f[i];
    }
    for (VertexId v : cover.uncovered)
        claim(v);
    for (VertexId v = 0; v < n; ++v)
        if (!seen[v])
            throw Error(ErrorCode::CoverMismatch, "pixel " + std::to_string(v) + " not in the cover");
    return out;
}

ImageSignal denoise_image_gft(const ImageSignal& img, const GftBasis& basis, double gamma)
{
    const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(img.pixels.data(), static_cast<Eigen::Index>(img.size()));
    const Eigen::VectorXd y = tikhonov_denoise_graph(basis, x, gamma);
    ImageSignal out = img;
    for (std::size_t i = 0; i < out.size(); ++i)
        out.pixels[i] = y[static_cast<Eigen::Index>(i)];
    return out;
}

ImageSignal denoise_image_gft(const ImageSignal& img, const Graph& lattice, double gamma, int cap)
{
    if (lattice.vertex_count() != static_cast<int>(img.size()))
        throw Error(ErrorCode::DimensionMismatch, "lattice does not match the image");
    return denoise_image_gft(img, gft_basis(lattice, cap), gamma);
}

double psnr(const ImageSignal& a, const ImageSignal& b)
{
    if (a.width != b.width || a.height != b.height)
        throw Error(ErrorCode::DimensionMismatch, "images differ in size");
    double sse = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.pixels[i] - b.pixels[i];
        sse += d * d;
    }
    if (sse == 0.0)
        return std::numeric_limits<double>::infinity();
    const double mse = sse / static_cast<double>(a.size());
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

}  // namespace cyclegsp
