#include "slx/weyl.hpp"

#include <cmath>

#include "slx/linalg.hpp"

namespace slx {

const char* realization_name(RealizationKind kind) {
  switch (kind) {
    case RealizationKind::Dirichlet: return "dirichlet";
    case RealizationKind::Neumann: return "neumann";
    case RealizationKind::Krein: return "krein";
    case RealizationKind::Robin: return "robin";
  }
  return "unknown";
}

const char* triplet_name(TripletTag tag) {
  return tag == TripletTag::Base ? "base" : "regularized";
}

Matrix weyl_base(const SpectralMeasure& m, Complex z) {
  if (z.imag() == 0.0 && z.real() >= m.eigenvalues()[0])
    fail(ErrorCode::OnSpectrumWithoutLimit,
         "real z >= t0; evaluate the boundary limit via boundary_value");
  return apply_function(m, [z](double t) {
    return Complex(0.0, 1.0) * branch_sqrt(z - t);
  });
}

Matrix boundary_value(const SpectralMeasure& m, RealizationKind kind,
                      double t) {
  const Complex i(0.0, 1.0);
  switch (kind) {
    case RealizationKind::Dirichlet:
      return apply_function(m, [&](double tj) {
        return i * branch_sqrt(Complex(t - tj, 0.0));
      });
    case RealizationKind::Neumann: {
      for (int j = 0; j < m.dim(); ++j)
        if (std::abs(t - m.eigenvalues()[j]) <
            1e-9 * std::max(1.0, std::abs(t)))
          fail(ErrorCode::EigenvalueCollision,
               "Neumann boundary value has a pole at eigenvalue " +
                   std::to_string(m.eigenvalues()[j]));
      return apply_function(m, [&](double tj) {
        return -1.0 / (i * branch_sqrt(Complex(t - tj, 0.0)));
      });
    }
    case RealizationKind::Krein: {
      if (std::abs(t) < 1e-9)
        fail(ErrorCode::KreinAtZero, "Krein boundary value has a pole at 0");
      return apply_function(m, [&](double tj) {
        return (i * branch_sqrt(Complex(t - tj, 0.0)) - std::sqrt(tj)) / t;
      });
    }
    case RealizationKind::Robin:
      fail(ErrorCode::ConfigParse,
           "Robin needs an explicit parameter; use weyl_of_extension");
  }
  fail(ErrorCode::ConfigParse, "unknown realization kind");
}

namespace {

// M evaluated at z, with real z taking the Dirichlet boundary limit.
Matrix weyl_any(const SpectralMeasure& m, Complex z) {
  if (z.imag() == 0.0)
    return boundary_value(m, RealizationKind::Dirichlet, z.real());
  return weyl_base(m, z);
}

}  // namespace

HerglotzSample weyl_of_extension(const SpectralMeasure& m,
                                 const ExtensionParameter& p, Complex z) {
  if (p.is_dirichlet)
    fail(ErrorCode::DirichletParameter,
         "the Dirichlet relation has no parameter matrix; its Weyl function "
         "is weyl_base / boundary_value itself");
  if (p.b.rows() != m.dim() || p.b.cols() != m.dim())
    fail(ErrorCode::GridMismatch, "parameter dimension mismatch");

  Matrix mz = weyl_any(m, z);
  if (p.triplet == TripletTag::Regularized) {
    // Canonical regularization pinned at z = i: Q = Re M(i), R = sqrt(Im M(i)).
    const Matrix mi = weyl_base(m, Complex(0.0, 1.0));
    const Matrix r_inv =
        psd_power(im_part(mi), -0.5, ErrorCode::DegenerateImaginaryPart);
    mz = r_inv * (mz - re_part(mi)) * r_inv;
  }

  HerglotzSample s;
  s.z = z;
  s.kind = RealizationKind::Robin;
  s.triplet = p.triplet;
  s.value = invert_pencil(p.b - mz);
  return s;
}

NormalFunctionEstimate invariant_max_normal(const SpectralMeasure& m,
                                            double t, int y_count,
                                            double y_min) {
  if (y_count < 8) fail(ErrorCode::BadGrid, "y_count must be >= 8");
  if (!(y_min > 0.0) || y_min > 1.0)
    fail(ErrorCode::BadGrid, "y_min must lie in (0, 1]");

  // Sandwich built from N(z) = -i M(z) = sqrt(z - T), not from M itself.
  // Only this rotation admits the T-independent a priori bound
  // (1+sqrt2)(1+t^2)^{1/4}: with s = sqrt(i - lambda) one has
  // |Re s / Im s| <= 1 and |sqrt(t+iy-lambda)| / Im s <= sqrt2 (1+t^2)^{1/4}
  // uniformly in lambda >= 0. The literal sandwich of M swaps Re and Im of
  // s into the wrong positions and grows like 2*lambda at t = lambda
  // (e.g. ~15.6 > bound 7.65 for lambda = 6, t = 10); see the unit test
  // pinning that counterexample.
  const Complex i(0.0, 1.0);
  const Matrix ni = apply_function(
      m, [&](double tj) { return branch_sqrt(i - tj); });
  const Matrix q = re_part(ni);
  const Matrix s =
      psd_power(im_part(ni), -0.5, ErrorCode::DegenerateImaginaryPart);

  NormalFunctionEstimate est;
  est.t = t;
  est.y_count = y_count;
  est.y_min = y_min;
  est.bound = (1.0 + std::sqrt(2.0)) * std::pow(1.0 + t * t, 0.25);

  // Geometric grid from 1 down to y_min, endpoints included.
  const double ratio = std::pow(y_min, 1.0 / (y_count - 1));
  double y = 1.0;
  for (int j = 0; j < y_count; ++j, y *= ratio) {
    const Matrix nz = apply_function(
        m, [&](double tj) { return branch_sqrt(Complex(t, y) - tj); });
    est.value = std::max(est.value, op_norm(s * (nz - q) * s));
  }
  return est;
}

}  // namespace slx
