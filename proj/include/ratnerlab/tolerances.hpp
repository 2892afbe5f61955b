#pragma once

// Numerical tolerances shared by the library and its tests.

namespace ratnerlab::tol {

// Spectral classification band around trace = +-2.
inline constexpr double kClassify = 1e-8;
// |det - 1| accepted for group elements.
inline constexpr double kDeterminant = 1e-9;
// Reconstruction / commutation of Jordan components (relative, max-norm).
inline constexpr double kJordanRelative = 1e-9;
// Relative gap below which computed eigenvalues are treated as one cluster.
// Defective eigenvalues of multiplicity m split by roughly eps^(1/m).
inline constexpr double kEigenCluster = 1e-4;
// Nilpotency test for (g - I)^l and X^l.
inline constexpr double kNilpotent = 1e-8;
// exp(log g) round trip.
inline constexpr double kExpLog = 1e-10;
// Weights of ad a within this distance of an integer are snapped.
inline constexpr double kWeightSnap = 1e-8;
// Imaginary part (relative) tolerated for a "real" eigenvalue.
inline constexpr double kRealEigen = 1e-8;
// Jacobi identity / antisymmetry for loaded structure constants.
inline constexpr double kJacobi = 1e-10;
// Bracket grading and subalgebra closure residuals.
inline constexpr double kGrading = 1e-9;
// Invariance of a subspace under Ad g; sl(2)-module relations; S~ membership.
inline constexpr double kInvariance = 1e-8;

// Fundamental-domain boundary tolerance.
inline constexpr double kDomainBoundary = 1e-12;
// Smallest admissible imaginary part of an upper-half-plane point.
inline constexpr double kMinImag = 1e-300;
// Gauss reduction step cap.
inline constexpr long kReductionCap = 1'000'000;

// Joint-divergence verdict: leading coefficients equal.
inline constexpr double kJointDiagonal = 1e-10;
// |t| bound for geodesic displacement before e^{2t} overflows usefully.
inline constexpr double kGeodesicTimeCap = 300.0;

// Probability vectors must sum to 1 within this.
inline constexpr double kProbabilitySum = 1e-12;

// Eigenvalue zero threshold for signatures, relative to the matrix norm.
inline constexpr double kSignatureZero = 1e-10;

}  // namespace ratnerlab::tol
