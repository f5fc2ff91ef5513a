#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "lupe/field.hpp"
#include "lupe/grid.hpp"

namespace lupe {

/// FFT workspace bound to one grid. Horizontal transforms are periodic
/// real-to-complex FFTs over all z layers at once; the vertical transform
/// is a cosine (DCT-II/III) pair, used for 3D filtering.
///
/// Plans are immutable after construction; execution uses per-call buffers
/// and is safe from multiple threads.
class Spectral {
public:
    explicit Spectral(const Grid& g);
    ~Spectral();
    Spectral(const Spectral&) = delete;
    Spectral& operator=(const Spectral&) = delete;

    const Grid& grid() const { return grid_; }

    /// Spectral d/dx and d/dy at cell centers (exact for band-limited fields).
    void ddx(const double* in, double* out) const;
    void ddy(const double* in, double* out) const;

    /// Multiplies the horizontal spectrum by m(kx, ky), all layers.
    void apply_h_multiplier(const double* in, double* out,
                            const std::function<double(double, double)>& m) const;

    /// Multiplies the full spectrum by m(kx, ky, kz); the vertical axis is
    /// handled by even (cosine) extension with kz = m*pi/h, m = 0..nz-1.
    void apply_3d_multiplier(const double* in, double* out,
                             const std::function<double(double, double, double)>& m) const;

    /// 2D Leray projection of a single horizontal layer (nx*ny values each),
    /// in place: per wavevector k != 0, v <- (I - k k^T/|k|^2) v.
    void leray2d_layer(double* vx, double* vy) const;

    /// Horizontal wavenumbers as used by the derivative operators
    /// (Nyquist column mapped to zero).
    double kx(int ii) const { return kx_[ii]; }
    double ky(int jj) const { return ky_[jj]; }
    int ncx() const { return grid_.nx / 2 + 1; }

    /// Forward/backward r2c transform of all layers; the complex buffer has
    /// ncx()*ny*nz entries, layer-major like the real data. Backward
    /// destroys the complex input and includes the 1/(nx*ny) normalization.
    void forward_h(const double* in, std::complex<double>* out) const;
    void backward_h(std::complex<double>* in, double* out) const;

private:
    struct Impl;
    Grid grid_;
    std::vector<double> kx_, ky_;
    std::unique_ptr<Impl> impl_;
};

/// Shared per-grid workspace (thread-safe lazy construction).
const Spectral& spectral_for(const Grid& g);

/// Convenience wrappers on fields.
ScalarField ddx(const ScalarField& f);
ScalarField ddy(const ScalarField& f);

}  // namespace lupe
