#pragma once

// The H^2 of the right half-plane, discretized: the Paley-Wiener transform
// as quadrature on a geometric time grid, the multiplication-dilation
// operator W that realizes affine composition downstairs on L^2(R_+), the
// weighted bilateral shift it conjugates to, eigenvector construction on
// the shift, and finite-window probes of the Caradus preconditions.
//
// Normalization: ||F||^2 on the half-plane carries a 1/(2 pi) so the
// transform is exactly isometric from L^2(R_+).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "hardylab/detail/tridiag.hpp"
#include "hardylab/series.hpp"

namespace hardylab {

// ---------------------------------------------------------------------------
// geometric half-line grid

// Samples of a function on t_j = base^{(m_lo + j)/K}; storing the exponent
// lattice makes the dilation t -> t/a an exact index shift, so w_operator
// and the block decomposition never interpolate.
struct HalfLineGrid {
    std::vector<double> points;  // ascending
    std::vector<Complex> values;
    double base = 0.0;   // 0 when the grid is not exponent-aligned
    long cell_points = 0;  // K: samples per factor of base
    long m_lo = 0;       // exponent index of points[0]

    static HalfLineGrid sample(const std::function<Complex(double)>& f, double t_min,
                               double t_max, std::size_t count) {
        HalfLineGrid g;
        g.points.resize(count);
        g.values.resize(count);
        const double r = std::pow(t_max / t_min, 1.0 / double(count - 1));
        double t = t_min;
        for (std::size_t j = 0; j < count; ++j) {
            g.points[j] = t;
            g.values[j] = f(t);
            t *= r;
        }
        return g;
    }

    // Grid aligned to the dilation with ratio a^{1/K}, spanning the cells
    // [a^{-cells_down}, a^{cells_up}] (a > 1).
    static HalfLineGrid sample_aligned(const std::function<Complex(double)>& f, double a,
                                       long K, long cells_down, long cells_up) {
        if (!(a > 1.0)) throw std::domain_error("sample_aligned: need a > 1");
        HalfLineGrid g;
        g.base = a;
        g.cell_points = K;
        g.m_lo = -cells_down * K;
        const long m_hi = cells_up * K;
        g.points.reserve(std::size_t(m_hi - g.m_lo + 1));
        g.values.reserve(g.points.capacity());
        for (long m = g.m_lo; m <= m_hi; ++m) {
            const double t = std::pow(a, double(m) / double(K));
            g.points.push_back(t);
            g.values.push_back(f(t));
        }
        return g;
    }
};

// Trapezoid of |f|^2 over the grid, plus the constant-extension head patch
// on (0, t_0] (the grids start tiny, so the patch is at noise level).
inline double l2_norm_sq(const HalfLineGrid& f) {
    double acc = 0.5 * f.points.front() *
                 (std::norm(f.values.front()) + std::norm(f.values.front()));
    for (std::size_t j = 0; j + 1 < f.points.size(); ++j)
        acc += 0.5 * (f.points[j + 1] - f.points[j]) *
               (std::norm(f.values[j]) + std::norm(f.values[j + 1]));
    return acc;
}

struct PaleyWienerStatus {
    bool tail_decayed = true;  // e^{-t Re(w)} |f| below 1e-12 by t_max
};

// (Pf)(w) = integral of f(t) e^{-t w} over the half-line; trapezoid per
// grid cell.
inline Complex paley_wiener(const HalfLineGrid& f, Complex w,
                            PaleyWienerStatus* status = nullptr) {
    if (w.real() <= 0.0) throw std::domain_error("paley_wiener: need Re(w) > 0");
    auto g = [&](std::size_t j) { return f.values[j] * std::exp(-f.points[j] * w); };
    Complex acc = f.points.front() * f.values.front();  // head patch, f frozen at f(t_0)
    Complex prev = g(0);
    for (std::size_t j = 0; j + 1 < f.points.size(); ++j) {
        const Complex next = g(j + 1);
        acc += 0.5 * (f.points[j + 1] - f.points[j]) * (prev + next);
        prev = next;
    }
    if (status)
        status->tail_decayed =
            std::abs(f.values.back()) * std::exp(-f.points.back() * w.real()) <= 1e-12;
    return acc;
}

// (Wf)(t) = (1/a) e^{-b t/a} f(t/a), realized on the rescaled grid
// points*a so every sample is reused exactly.
inline HalfLineGrid w_operator(const HalfLineGrid& f, double a, Complex b) {
    if (!(a > 0.0)) throw std::domain_error("w_operator: need a > 0");
    HalfLineGrid g = f;
    for (std::size_t j = 0; j < g.points.size(); ++j) {
        g.values[j] = (1.0 / a) * std::exp(-b * f.points[j]) * f.values[j];
        g.points[j] = a * f.points[j];
    }
    if (g.base != 0.0) g.m_lo += g.cell_points;  // exponent lattice shifts by one cell
    return g;
}

// ---------------------------------------------------------------------------
// the weighted bilateral shift model

// Discretized model of the shift the composition operator conjugates to.
// left_weight is the weight of the left shift (T g)_n = c_n g_{n+1}
// produced by the block unitary; right_weight is the reversed family
// k_n = c_{-n} of the equivalent right shift (index map n -> -n), which is
// the orientation every spectral probe here uses.  Report fields call the
// right-orientation asymptotes tail_minus (n -> -infinity, value a^{-1/2})
// and tail_plus (n -> +infinity, value 0) to keep them apart from the
// symbol parameters.
struct ShiftModel {
    double a = 2.0;
    Complex b{1.0};
    long window = 40;       // indices -window..window
    std::vector<double> cell;  // geometric grid across [1,a] (or [a,1])
    std::vector<std::vector<double>> left_weights;  // [n + window][cell index]

    double left_weight(long n, double t) const {
        return std::pow(a, -0.5) * std::exp(-b.real() * std::pow(a, double(-n - 1)) * t);
    }
    double right_weight(long n, double t) const { return left_weight(-n, t); }

    double tail_minus() const { return std::pow(a, -0.5); }
    double tail_plus() const { return 0.0; }

    // trapezoid weights on the cell grid
    double cell_norm_sq(const std::vector<Complex>& x) const {
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < cell.size(); ++i)
            acc += 0.5 * (cell[i + 1] - cell[i]) * (std::norm(x[i]) + std::norm(x[i + 1]));
        return acc;
    }
};

inline ShiftModel build_shift_model(double a, Complex b, long window, long cell_points) {
    if (!(a > 0.0) || a == 1.0) throw std::domain_error("build_shift_model: need a > 0, a != 1");
    if (!(b.real() >= 0.0)) throw std::domain_error("build_shift_model: need Re(b) >= 0");
    ShiftModel m;
    m.a = a;
    m.b = b;
    m.window = window;
    const double lo = std::min(1.0, a), hi = std::max(1.0, a);
    m.cell.resize(std::size_t(cell_points) + 1);
    for (long i = 0; i <= cell_points; ++i)
        m.cell[std::size_t(i)] = lo * std::pow(hi / lo, double(i) / double(cell_points));
    m.left_weights.assign(std::size_t(2 * window + 1), {});
    for (long n = -window; n <= window; ++n) {
        auto& row = m.left_weights[std::size_t(n + window)];
        row.resize(m.cell.size());
        for (std::size_t i = 0; i < m.cell.size(); ++i) row[i] = m.left_weight(n, m.cell[i]);
    }
    return m;
}

// ---------------------------------------------------------------------------
// eigenvectors of the shift

struct ShiftEigenvector {
    std::vector<std::vector<Complex>> blocks;  // n = -window..window on the cell grid
    std::vector<double> block_norms;
    double interior_residual = 0.0;     // ||T x - lambda x|| / ||x|| away from the cut
    double backward_tail_ratio = 0.0;   // measured, expected |lambda| / tail_minus
    double forward_tail_ratio = 0.0;    // measured, 0 when the forward side underflows
    bool is_eigenvalue = false;         // both tails decay inside the window
};

// Solve (T x)_n = k_n x_{n-1} = lambda x_n cellwise from x_0: upward
// x_n = k_n x_{n-1} / lambda... inverted, x_n = x_{n-1} k_n / lambda going
// up and x_n = lambda x_{n+1} / k_{n+1} going down.  Outside the punctured
// disk |lambda| < a^{-1/2} one tail refuses to decay, which is exactly the
// diagnostic reported.
inline ShiftEigenvector shift_eigenvector(const ShiftModel& m, Complex lambda,
                                          const std::vector<Complex>& x0) {
    if (std::abs(lambda) == 0.0) throw std::domain_error("shift_eigenvector: lambda = 0");
    if (x0.size() != m.cell.size())
        throw std::domain_error("shift_eigenvector: x0 must live on the cell grid");
    const long M = m.window;
    const std::size_t nc = m.cell.size();
    ShiftEigenvector out;
    out.blocks.assign(std::size_t(2 * M + 1), std::vector<Complex>(nc, Complex(0.0)));
    auto block = [&](long n) -> std::vector<Complex>& {
        return out.blocks[std::size_t(n + M)];
    };

    block(0) = x0;
    for (long n = 1; n <= M; ++n)
        for (std::size_t i = 0; i < nc; ++i)
            block(n)[i] = block(n - 1)[i] * m.right_weight(n, m.cell[i]) / lambda;
    for (long n = -1; n >= -M; --n)
        for (std::size_t i = 0; i < nc; ++i) {
            const double k = m.right_weight(n + 1, m.cell[i]);
            block(n)[i] = lambda * block(n + 1)[i] / k;
        }

    // guard against overflow when lambda sits far outside the spectrum
    double biggest = 0.0;
    for (auto& blk : out.blocks)
        for (Complex& v : blk) {
            if (!std::isfinite(std::abs(v))) v = Complex(1e300);
            biggest = std::max(biggest, std::abs(v));
        }
    if (biggest > 1e200)
        for (auto& blk : out.blocks)
            for (Complex& v : blk) v *= 1e-200;

    out.block_norms.reserve(out.blocks.size());
    for (auto& blk : out.blocks) out.block_norms.push_back(std::sqrt(m.cell_norm_sq(blk)));

    double total_sq = 0.0;
    for (double nb : out.block_norms) total_sq += nb * nb;
    const double total = std::sqrt(total_sq);

    // interior residual over rows n = -M+1..M
    double res_sq = 0.0;
    for (long n = -M + 1; n <= M; ++n) {
        std::vector<Complex> row(nc);
        for (std::size_t i = 0; i < nc; ++i)
            row[i] = m.right_weight(n, m.cell[i]) * block(n - 1)[i] - lambda * block(n)[i];
        res_sq += m.cell_norm_sq(row);
    }
    out.interior_residual = total > 0.0 ? std::sqrt(res_sq) / total : 0.0;

    auto median_ratio = [&](long from, long to, bool toward_minus) {
        std::vector<double> r;
        for (long n = from; n < to; ++n) {
            const double num = out.block_norms[std::size_t((toward_minus ? n : n + 1) + M)];
            const double den = out.block_norms[std::size_t((toward_minus ? n + 1 : n) + M)];
            if (den > 1e-300) r.push_back(num / den);
            else if (num <= 1e-300) r.push_back(0.0);
        }
        if (r.empty()) return 0.0;
        std::sort(r.begin(), r.end());
        return r[r.size() / 2];
    };
    const long probe = std::max<long>(4, M / 5);
    out.backward_tail_ratio = median_ratio(-M, -M + probe, true);
    out.forward_tail_ratio = median_ratio(M - probe, M, false);
    out.is_eigenvalue = out.backward_tail_ratio < 1.0 - 1e-9 &&
                        out.forward_tail_ratio < 1.0 - 1e-9;
    return out;
}

// ---------------------------------------------------------------------------
// block unitary between L^2(R_+) and the shift space

struct BlockDecomposition {
    long n_lo = 0, n_hi = 0;
    std::vector<std::vector<Complex>> blocks;  // h_n on the cell grid
    double sum_norm_sq = 0.0;

    double isometry_defect(double ref_norm_sq) const {
        return std::abs(sum_norm_sq - ref_norm_sq) / ref_norm_sq;
    }
};

namespace detail {

// cumulative phase exponents of the unimodular a_n(t) = exp(i Im(b) t S(n)):
// S(n) = -sum_{k=0..n} a^{-k} for n >= 0, and -1 + sum_{k=0..-n-1} a^k for n < 0
inline double phase_sum(double a, long n) {
    double s = 0.0;
    if (n >= 0) {
        double p = 1.0;
        for (long k = 0; k <= n; ++k) {
            s -= p;
            p /= a;
        }
    } else {
        s = -1.0;
        double p = 1.0;
        for (long k = 0; k <= -n - 1; ++k) {
            s += p;
            p *= a;
        }
    }
    return s;
}

}  // namespace detail

// h_n(t) = a^{-n/2} a_n(t) f(t / a^n) on the cell [1, a]; the grid must be
// exponent-aligned to the model so the dilation is an index shift.
inline BlockDecomposition block_unitary(const HalfLineGrid& f, const ShiftModel& m) {
    if (f.base != m.a || f.cell_points <= 0)
        throw std::domain_error("block_unitary: grid is not aligned to the model");
    const long K = f.cell_points;
    const long M = m.window;
    const long count = long(f.points.size());

    BlockDecomposition out;
    out.n_lo = -M;
    out.n_hi = M;
    out.blocks.assign(std::size_t(2 * M + 1), {});
    const double im_b = m.b.imag();

    for (long n = -M; n <= M; ++n) {
        std::vector<Complex> h(std::size_t(K) + 1, Complex(0.0));
        bool available = true;
        for (long i = 0; i <= K; ++i) {
            const long j = i - n * K - f.m_lo;  // grid index of a^{i/K - n}
            if (j < 0 || j >= count) {
                available = false;
                break;
            }
            const double t = m.cell[std::size_t(i)];
            const Complex phase =
                std::exp(Complex(0.0, im_b * t * detail::phase_sum(m.a, n)));
            h[std::size_t(i)] = std::pow(m.a, -double(n) / 2.0) * phase * f.values[std::size_t(j)];
        }
        if (!available)
            throw std::domain_error("block_unitary: grid margin too small for the window");
        out.sum_norm_sq += m.cell_norm_sq(h);
        out.blocks[std::size_t(n + M)] = std::move(h);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Caradus preconditions on the truncated shift

struct CaradusProbe {
    long window = 0;
    long kernel_count = 0;          // singular values of T - lambda below 1e-8
    double surjectivity_floor = 0;  // smallest co-window singular value of the adjoint
};

// The truncated right shift minus lambda decouples over the cell points
// into bidiagonal blocks (diagonal -lambda, subdiagonal k_n).  Near-kernel
// counts come from Golub-Kahan Sturm counts; the surjectivity proxy is the
// smallest eigenvalue of the co-window principal submatrix of A A^*, which
// excises the backward-edge defect the truncation itself creates.
inline CaradusProbe caradus_precheck(const ShiftModel& m, Complex lambda,
                                     double kernel_tol = 1e-8) {
    const long M = m.window;
    const long dim = 2 * M + 1;
    CaradusProbe out;
    out.window = M;
    const double mod = std::abs(lambda);
    double floor_min = -1.0;

    for (double t : m.cell) {
        std::vector<double> diag(std::size_t(dim), mod);
        std::vector<double> sub(std::size_t(dim - 1));
        for (long n = -M + 1; n <= M; ++n)
            sub[std::size_t(n + M - 1)] = m.right_weight(n, t);

        out.kernel_count += detail::bidiagonal_count_singular_below(diag, sub, kernel_tol);

        // A A^* is tridiagonal: diag |lambda|^2 + k_n^2, off |lambda| k_{n+1};
        // keep rows n >= -M + ceil(M/2)
        const long cut = -M + (M + 1) / 2;
        std::vector<double> d2, o2;
        for (long n = cut; n <= M; ++n) {
            const double kn = (n > -M) ? m.right_weight(n, t) : 0.0;
            d2.push_back(mod * mod + kn * kn);
            if (n < M) o2.push_back(mod * m.right_weight(n + 1, t));
        }
        const double lam_min = detail::tridiag_smallest_eigenvalue(d2, o2);
        const double sv = std::sqrt(std::max(lam_min, 0.0));
        floor_min = floor_min < 0.0 ? sv : std::min(floor_min, sv);
    }
    out.surjectivity_floor = std::max(floor_min, 0.0);
    return out;
}

}  // namespace hardylab
