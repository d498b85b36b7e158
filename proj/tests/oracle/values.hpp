#pragma once
// Frozen numerical references for the exact-formula layer, used only by tests.
// Every constant below was produced by an independent 40-digit arbitrary
// precision evaluation (mpmath) of the defining integrals and series, frozen
// before the library implementation was written. Do not regenerate casually:
// these are the oracles, not the output.

#include <cstddef>

namespace oracle {

// Two-orientation (folded) winding mass pmf(n, r) for a rooted unit-duration
// loop at distance r from the winding point, n >= 1. Layout: [n-1][r index],
// r grid below.
inline constexpr double kPmfRGrid[4] = {0.25, 0.5, 1.0, 2.0};
inline constexpr double kPmfFolded[4][4] = {
    {3.89126470409816789e-02, 2.06981167909094099e-02, 3.02988894910358601e-03,
     4.25884054830417439e-06},
    {1.07261622012697386e-02, 4.95449566475085718e-03, 6.55560738137116773e-04,
     8.74621274262527243e-07},
    {4.82832950786763903e-03, 2.17479085260293778e-03, 2.83583750048927080e-04,
     3.75930312479887217e-07},
    {2.72638664357900747e-03, 1.21759544179917994e-03, 1.58013350759491358e-04,
     2.09041639855265648e-07},
};

// Single-orientation spot values, pmf_folded = 2 * pmf_signed.
inline constexpr double kPmfSignedN1R1 = 1.51494447455179301e-03;
inline constexpr double kPmfSignedN2Rhalf = 2.47724783237542859e-03;
inline constexpr double kPmfSignedN3R2 = 1.87965156239943609e-07;

// Plane integral of the folded pmf over the root location, k = 1..5.
// Equals 1/(2 pi^2 k^2); the identity was certified to 1e-30 by integrating
// the pmf representation directly.
inline constexpr double kAreaMassFolded[5] = {
    5.0660591821168885722e-02, 1.2665147955292221430e-02,
    5.6289546467965428580e-03, 3.1662869888230553576e-03,
    2.0264236728467554289e-03,
};

// Sum over all k >= 1 of the folded pmf at r = 1 (the k-sum telescopes to a
// single closed integral, evaluated exactly), and the total diagonal mass.
// kZeroWindingMassR1 + kFoldedSumR1 == kDiagonalMass.
inline constexpr double kFoldedSumR1 = 4.68157582241572733e-03;
inline constexpr double kDiagonalMass = 1.59154943091895336e-01;  // 1/(2 pi)
inline constexpr double kZeroWindingMassR1 = 1.54473367269479608e-01;

// Modified Bessel function of the first kind, I_order(x).
struct BesselRef {
  double order;
  double x;
  double value;
};
inline constexpr BesselRef kBesselRefs[] = {
    {0.0, 0.1, 1.00250156293409564},
    {0.5, 1.0, 0.937674888245487647},
    {0.3, 2.0, 2.17763798955373796},
    {2.5, 7.3, 141.053659706777209},
    {1.7, 0.001, 1.58273745713283749e-06},
    {12.0, 30.0, 7.03618794424102027e+10},
    {3.2, 450.0, 5.03494404382872114e+193},
    {0.3, 600.0, 6.14584406351657116e+258},
};

// Segment angle weights e^{rho} Int_0^inf I_u(rho) cos(u theta) du, the
// order-cosine transform evaluated directly (100-digit working precision:
// the transform cancels catastrophically at large rho). The library route
// is the rational-kernel contour form, so the two share no code path.
struct SegmentAngleRef {
  double rho;
  double theta;
  double value;
};
inline constexpr SegmentAngleRef kSegmentAngleRefs[] = {
    {0.03, 0.4, 0.25990347897355946},
    {0.03, 2.9, 0.17610611835140254},
    {0.03, -8.2, 0.048658420776518557},
    {0.7, 1.2, 1.1599578463119312},
    {0.7, 3.14159265358979, 0.21707973345365946},
    {2.5, -0.9, 28.734353308333848},
    {2.5, 6.9, 0.019434684108691635},
    {12.0, 2.7, 1.4700861576621502},
    {12.0, -5.1, 0.02162628319502973},
    {45.0, 3.0, 0.64539849786433598},
};

// Exponent law a(beta) = beta (2 pi - beta) / (4 pi^2) at selected angles.
inline constexpr double kExponentAtPi = 0.25;
inline constexpr double kExponentAtHalfPi = 0.1875;

// ln(5) / pi^2: expected count of winding-one loops escaping radius 0.2
// inside the unit disc at intensity alpha = 2.
inline constexpr double kEscapeCountAlpha2Delta02 = 0.163070154286676221;

// delta^{1/4} on the scan grid used for the phase-decay law at beta = pi.
inline constexpr double kPhaseScanDeltas[5] = {0.5, 0.35, 0.25, 0.18, 0.125};
inline constexpr double kPhaseScanRefs[5] = {
    0.840896415253714543, 0.769160567313458682, 0.707106781186547524,
    0.651355562432630581, 0.594603557501360533,
};

// Median loop duration for the 1/(2 pi t^2) dt intensity on [0.01, 10].
inline constexpr double kDurationMedian = 0.01998001998001998;

}  // namespace oracle
