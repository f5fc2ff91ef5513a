#include "lupe/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <numbers>

namespace lupe {

namespace {
std::mutex g_fftw_mutex;  // plan creation is not thread-safe
}

struct Spectral::Impl {
    fftw_plan fwd_all = nullptr;    // r2c over (y, x), all nz layers
    fftw_plan bwd_all = nullptr;    // c2r, all nz layers
    fftw_plan fwd_layer = nullptr;  // single layer
    fftw_plan bwd_layer = nullptr;
    fftw_plan dct_fwd = nullptr;    // REDFT10 along z, all columns
    fftw_plan dct_bwd = nullptr;    // REDFT01 along z

    ~Impl() {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        if (fwd_all) fftw_destroy_plan(fwd_all);
        if (bwd_all) fftw_destroy_plan(bwd_all);
        if (fwd_layer) fftw_destroy_plan(fwd_layer);
        if (bwd_layer) fftw_destroy_plan(bwd_layer);
        if (dct_fwd) fftw_destroy_plan(dct_fwd);
        if (dct_bwd) fftw_destroy_plan(dct_bwd);
    }
};

Spectral::Spectral(const Grid& g) : grid_(g), impl_(std::make_unique<Impl>()) {
    const int nx = g.nx, ny = g.ny, nz = g.nz;
    const int ncx = nx / 2 + 1;
    kx_.resize(ncx);
    ky_.resize(ny);
    const double two_pi = 2.0 * std::numbers::pi;
    for (int ii = 0; ii < ncx; ++ii) kx_[ii] = (ii < nx / 2) ? two_pi * ii / g.Lx : 0.0;
    for (int jj = 0; jj < ny; ++jj) {
        int n = (jj <= ny / 2) ? jj : jj - ny;
        ky_[jj] = (jj == ny / 2) ? 0.0 : two_pi * n / g.Ly;
    }

    std::vector<double> rbuf(g.size());
    std::vector<std::complex<double>> cbuf(static_cast<std::size_t>(ncx) * ny * nz);

    std::lock_guard<std::mutex> lock(g_fftw_mutex);
    const int dims[2] = {ny, nx};
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    impl_->fwd_all =
        fftw_plan_many_dft_r2c(2, dims, nz, rbuf.data(), nullptr, 1, nx * ny,
                               reinterpret_cast<fftw_complex*>(cbuf.data()), nullptr, 1, ncx * ny, flags);
    impl_->bwd_all =
        fftw_plan_many_dft_c2r(2, dims, nz, reinterpret_cast<fftw_complex*>(cbuf.data()), nullptr, 1,
                               ncx * ny, rbuf.data(), nullptr, 1, nx * ny, flags);
    impl_->fwd_layer =
        fftw_plan_many_dft_r2c(2, dims, 1, rbuf.data(), nullptr, 1, nx * ny,
                               reinterpret_cast<fftw_complex*>(cbuf.data()), nullptr, 1, ncx * ny, flags);
    impl_->bwd_layer =
        fftw_plan_many_dft_c2r(2, dims, 1, reinterpret_cast<fftw_complex*>(cbuf.data()), nullptr, 1,
                               ncx * ny, rbuf.data(), nullptr, 1, nx * ny, flags);

    std::vector<double> zbuf(g.size());
    fftw_r2r_kind kf = FFTW_REDFT10, kb = FFTW_REDFT01;
    impl_->dct_fwd = fftw_plan_many_r2r(1, &nz, nx * ny, rbuf.data(), nullptr, nx * ny, 1,
                                        zbuf.data(), nullptr, nx * ny, 1, &kf, flags);
    impl_->dct_bwd = fftw_plan_many_r2r(1, &nz, nx * ny, rbuf.data(), nullptr, nx * ny, 1,
                                        zbuf.data(), nullptr, nx * ny, 1, &kb, flags);
}

Spectral::~Spectral() = default;

void Spectral::forward_h(const double* in, std::complex<double>* out) const {
    // FFTW takes a non-const input pointer but r2c does not modify it.
    fftw_execute_dft_r2c(impl_->fwd_all, const_cast<double*>(in),
                         reinterpret_cast<fftw_complex*>(out));
}

void Spectral::backward_h(std::complex<double>* in, double* out) const {
    fftw_execute_dft_c2r(impl_->bwd_all, reinterpret_cast<fftw_complex*>(in), out);
    const double norm = 1.0 / (static_cast<double>(grid_.nx) * grid_.ny);
    const std::size_t n = grid_.size();
    for (std::size_t i = 0; i < n; ++i) out[i] *= norm;
}

void Spectral::ddx(const double* in, double* out) const {
    const int ncx_ = ncx(), ny = grid_.ny, nz = grid_.nz;
    std::vector<std::complex<double>> c(static_cast<std::size_t>(ncx_) * ny * nz);
    forward_h(in, c.data());
    for (int k = 0; k < nz; ++k)
        for (int jj = 0; jj < ny; ++jj)
            for (int ii = 0; ii < ncx_; ++ii) {
                auto& v = c[ii + static_cast<std::size_t>(ncx_) * (jj + static_cast<std::size_t>(ny) * k)];
                v *= std::complex<double>(0.0, kx_[ii]);
            }
    backward_h(c.data(), out);
}

void Spectral::ddy(const double* in, double* out) const {
    const int ncx_ = ncx(), ny = grid_.ny, nz = grid_.nz;
    std::vector<std::complex<double>> c(static_cast<std::size_t>(ncx_) * ny * nz);
    forward_h(in, c.data());
    for (int k = 0; k < nz; ++k)
        for (int jj = 0; jj < ny; ++jj)
            for (int ii = 0; ii < ncx_; ++ii) {
                auto& v = c[ii + static_cast<std::size_t>(ncx_) * (jj + static_cast<std::size_t>(ny) * k)];
                v *= std::complex<double>(0.0, ky_[jj]);
            }
    backward_h(c.data(), out);
}

void Spectral::apply_h_multiplier(const double* in, double* out,
                                  const std::function<double(double, double)>& m) const {
    const int ncx_ = ncx(), ny = grid_.ny, nz = grid_.nz;
    std::vector<std::complex<double>> c(static_cast<std::size_t>(ncx_) * ny * nz);
    forward_h(in, c.data());
    for (int jj = 0; jj < ny; ++jj)
        for (int ii = 0; ii < ncx_; ++ii) {
            const double mult = m(kx_[ii], ky_[jj]);
            for (int k = 0; k < nz; ++k)
                c[ii + static_cast<std::size_t>(ncx_) * (jj + static_cast<std::size_t>(ny) * k)] *= mult;
        }
    backward_h(c.data(), out);
}

void Spectral::apply_3d_multiplier(const double* in, double* out,
                                   const std::function<double(double, double, double)>& m) const {
    const int ncx_ = ncx(), nx = grid_.nx, ny = grid_.ny, nz = grid_.nz;
    const double pi = std::numbers::pi;
    // DCT-II along z, then a 2D FFT per vertical wavenumber.
    std::vector<double> zhat(grid_.size());
    fftw_execute_r2r(impl_->dct_fwd, const_cast<double*>(in), zhat.data());
    std::vector<std::complex<double>> c(static_cast<std::size_t>(ncx_) * ny);
    std::vector<double> layer(grid_.hsize());
    for (int mz = 0; mz < nz; ++mz) {
        double* slab = zhat.data() + static_cast<std::size_t>(mz) * grid_.hsize();
        fftw_execute_dft_r2c(impl_->fwd_layer, slab, reinterpret_cast<fftw_complex*>(c.data()));
        const double kz = mz * pi / grid_.h;
        for (int jj = 0; jj < ny; ++jj)
            for (int ii = 0; ii < ncx_; ++ii)
                c[ii + static_cast<std::size_t>(ncx_) * jj] *= m(kx_[ii], ky_[jj], kz);
        fftw_execute_dft_c2r(impl_->bwd_layer, reinterpret_cast<fftw_complex*>(c.data()), layer.data());
        const double norm = 1.0 / (static_cast<double>(nx) * ny);
        for (std::size_t i = 0; i < grid_.hsize(); ++i) slab[i] = layer[i] * norm;
    }
    fftw_execute_r2r(impl_->dct_bwd, zhat.data(), out);
    const double znorm = 1.0 / (2.0 * nz);
    const std::size_t n = grid_.size();
    for (std::size_t i = 0; i < n; ++i) out[i] *= znorm;
}

void Spectral::leray2d_layer(double* vx, double* vy) const {
    const int ncx_ = ncx(), nx = grid_.nx, ny = grid_.ny;
    std::vector<std::complex<double>> cx(static_cast<std::size_t>(ncx_) * ny);
    std::vector<std::complex<double>> cy(cx.size());
    fftw_execute_dft_r2c(impl_->fwd_layer, vx, reinterpret_cast<fftw_complex*>(cx.data()));
    fftw_execute_dft_r2c(impl_->fwd_layer, vy, reinterpret_cast<fftw_complex*>(cy.data()));
    for (int jj = 0; jj < ny; ++jj)
        for (int ii = 0; ii < ncx_; ++ii) {
            // Nyquist wavenumbers are treated as zero, matching ddx/ddy.
            // Projecting the Nyquist column with a signed ky would break the
            // conjugate symmetry of the half-spectrum (the c2r transform
            // would silently re-symmetrize, leaving residual divergence).
            const double kxv = kx_[ii];
            const double kyv = ky_[jj];
            const double k2 = kxv * kxv + kyv * kyv;
            if (k2 == 0.0) continue;
            const std::size_t n = ii + static_cast<std::size_t>(ncx_) * jj;
            const std::complex<double> kdotv = kxv * cx[n] + kyv * cy[n];
            cx[n] -= kxv * kdotv / k2;
            cy[n] -= kyv * kdotv / k2;
        }
    fftw_execute_dft_c2r(impl_->bwd_layer, reinterpret_cast<fftw_complex*>(cx.data()), vx);
    fftw_execute_dft_c2r(impl_->bwd_layer, reinterpret_cast<fftw_complex*>(cy.data()), vy);
    const double norm = 1.0 / (static_cast<double>(nx) * ny);
    for (std::size_t i = 0; i < grid_.hsize(); ++i) {
        vx[i] *= norm;
        vy[i] *= norm;
    }
}

const Spectral& spectral_for(const Grid& g) {
    static std::mutex mtx;
    static std::map<std::tuple<int, int, int, double, double, double>, std::unique_ptr<Spectral>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_tuple(g.nx, g.ny, g.nz, g.Lx, g.Ly, g.h);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::make_unique<Spectral>(g)).first;
    return *it->second;
}

ScalarField ddx(const ScalarField& f) {
    ScalarField out(f.grid);
    spectral_for(f.grid).ddx(f.data.data(), out.data.data());
    return out;
}

ScalarField ddy(const ScalarField& f) {
    ScalarField out(f.grid);
    spectral_for(f.grid).ddy(f.data.data(), out.data.data());
    return out;
}

}  // namespace lupe
