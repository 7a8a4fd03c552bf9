/*
 * Copyright 2026 The upspec Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "upspec/dft.hpp"
#include "upspec/errors.hpp"

namespace upspec {
namespace {

using ::upspec::testing::brute_dft;
using ::upspec::testing::brute_dft2;
using ::upspec::testing::max_abs_diff;
using ::upspec::testing::random_vector;

void ExpectSpectrumNear(const Spectrum& s, const std::vector<Complex>& expected,
                        double tol) {
  ASSERT_EQ(s.size(), expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) {
    EXPECT_NEAR(s[k].real(), expected[k].real(), tol) << "bin " << k;
    EXPECT_NEAR(s[k].imag(), expected[k].imag(), tol) << "bin " << k;
  }
}

TEST(SignalTest, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(Signal(std::vector<double>{}), InvalidInput);
  EXPECT_THROW(Signal({1.0, NAN}), InvalidInput);
  EXPECT_THROW(Signal({INFINITY}), InvalidInput);
  EXPECT_THROW(Image(2, 2, 1, std::vector<double>(3)), InvalidInput);
  EXPECT_THROW(Image(0, 2, 1), InvalidInput);
}

TEST(DftTest, DeltaHasFlatSpectrum) {
  ExpectSpectrumNear(dft(Signal{1, 0, 0, 0}), {1, 1, 1, 1}, 1e-15);
}

TEST(DftTest, ConstantIsPureDc) {
  ExpectSpectrumNear(dft(Signal{1, 1, 1, 1}), {4, 0, 0, 0}, 1e-15);
}

TEST(DftTest, ZeroInsertedPairMatchesBruteForce) {
  // Brute force: F_k = 1 + 2 (-1)^k.
  ExpectSpectrumNear(dft(Signal{1, 0, 2, 0}), {3, -1, 3, -1}, 1e-15);
}

TEST(DftTest, MatchesDirectSumForAllLengthsUpTo70) {
  std::mt19937_64 rng(11);
  for (std::size_t n = 1; n <= 70; ++n) {
    const auto x = random_vector(rng, n);
    const Spectrum s = dft(Signal(x));
    EXPECT_LE(max_abs_diff(s.coefficients, brute_dft(x)), 1e-11) << "n=" << n;
  }
}

TEST(DftTest, LargePrimeLengthMatchesDirectSum) {
  std::mt19937_64 rng(12);
  const auto x = random_vector(rng, 1021);
  EXPECT_LE(max_abs_diff(dft(Signal(x)).coefficients, brute_dft(x)), 1e-10);
}

TEST(DftTest, EmptyComplexInputIsRejected) {
  EXPECT_THROW(dft(std::span<const Complex>{}), InvalidInput);
}

TEST(IdftTest, DcOnlySpectrum) {
  const Signal x = idft(Spectrum{{4, 0, 0, 0}});
  for (double v : x.samples()) EXPECT_NEAR(v, 1.0, 1e-15);
}

TEST(IdftTest, PureCosineSpectrum) {
  // (1/4)(2 i^j + 2 (-i)^j) = cos(pi j / 2).
  const Signal x = idft(Spectrum{{0, 2, 0, 2}});
  const std::vector<double> expected{1, 0, -1, 0};
  for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(x[j], expected[j], 1e-15);
}

TEST(IdftTest, RoundTrip) {
  const Signal x{0.3, -1.2, 5, 2};
  const Signal back = idft(dft(x));
  for (std::size_t j = 0; j < x.size(); ++j) EXPECT_NEAR(back[j], x[j], 1e-14);
}

TEST(IdftTest, AsymmetricSpectrumIsNotReal) {
  EXPECT_THROW(idft(Spectrum{{0, 1, 0, 0}}), NonRealResult);
}

TEST(IdftTest, RequiresUnshiftedConvention) {
  EXPECT_THROW(idft(Spectrum{{1, 0}, SpectrumConvention::kCentered}), InvalidInput);
}

TEST(DftPropertyTest, ParsevalLinearityAndConjugateSymmetry) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::size_t> len(1, 1024);
  std::uniform_real_distribution<double> coef(-3, 3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = len(rng);
    const auto x = random_vector(rng, n);
    const auto y = random_vector(rng, n);
    const Spectrum fx = dft(Signal(x));
    const Spectrum fy = dft(Signal(y));

    double time_energy = 0.0;
    double freq_energy = 0.0;
    for (std::size_t j = 0; j < n; ++j) time_energy += x[j] * x[j];
    for (const Complex& c : fx.coefficients) freq_energy += std::norm(c);
    freq_energy /= static_cast<double>(n);
    EXPECT_LE(std::abs(time_energy - freq_energy), 1e-10 * time_energy) << "n=" << n;

    const double a = coef(rng);
    const double b = coef(rng);
    std::vector<double> combo(n);
    for (std::size_t j = 0; j < n; ++j) combo[j] = a * x[j] + b * y[j];
    const Spectrum fc = dft(Signal(combo));
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_LE(std::abs(fc[k] - (a * fx[k] + b * fy[k])), 1e-10 * (1.0 + std::abs(fc[k])));
      EXPECT_LE(std::abs(fx[k] - std::conj(fx[(n - k) % n])), 1e-10 * (1.0 + std::abs(fx[k])));
    }

    const Signal back = idft(fx);
    for (std::size_t j = 0; j < n; ++j) EXPECT_NEAR(back[j], x[j], 1e-10);
  }
}

TEST(Dft2Test, SinglePixel) {
  const auto s = dft2(Image(1, 1, 1, {2.5}));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_DOUBLE_EQ(s[0].at(0, 0).real(), 2.5);
}

TEST(Dft2Test, AllOnesIsDcOnly) {
  const auto s = dft2(Image(2, 2, 1, {1, 1, 1, 1}));
  EXPECT_NEAR(std::abs(s[0].at(0, 0) - Complex(4)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s[0].at(0, 1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s[0].at(1, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s[0].at(1, 1)), 0.0, 1e-15);
}

TEST(Dft2Test, DeltaIsFlat) {
  const auto s = dft2(Image(2, 2, 1, {1, 0, 0, 0}));
  for (const Complex& c : s[0].coefficients) EXPECT_NEAR(std::abs(c - Complex(1)), 0.0, 1e-15);
}

TEST(Dft2Test, MatchesDoubleSumPerChannel) {
  std::mt19937_64 rng(14);
  for (std::size_t h = 1; h <= 8; ++h) {
    for (std::size_t w = 1; w <= 8; ++w) {
      const std::size_t c = 1 + (h + w) % 3;
      const auto values = random_vector(rng, h * w * c);
      const Image img(h, w, c, values);
      const auto spectra = dft2(img);
      ASSERT_EQ(spectra.size(), c);
      for (std::size_t ch = 0; ch < c; ++ch) {
        std::vector<double> plane(h * w);
        for (std::size_t i = 0; i < h * w; ++i) plane[i] = values[i * c + ch];
        EXPECT_LE(max_abs_diff(spectra[ch].coefficients, brute_dft2(plane, h, w)), 1e-9)
            << h << "x" << w << " channel " << ch;
      }
    }
  }
}

TEST(Dft2Test, InverseRestoresInput) {
  std::mt19937_64 rng(15);
  const auto values = random_vector(rng, 6 * 10);
  const Spectrum2D s = dft2(std::vector<Complex>(values.begin(), values.end()), 6, 10);
  const Spectrum2D back = idft2_complex(s);
  for (std::size_t i = 0; i < values.size(); ++i) {
    EXPECT_NEAR(back.coefficients[i].real(), values[i], 1e-13);
    EXPECT_NEAR(back.coefficients[i].imag(), 0.0, 1e-13);
  }
}

TEST(CenterShiftTest, EvenLengthIsHalfRotation) {
  const Spectrum s = center_shift(Spectrum{{1, 2, 3, 4}});
  EXPECT_EQ(s.convention, SpectrumConvention::kCentered);
  EXPECT_EQ(s.coefficients, (std::vector<Complex>{3, 4, 1, 2}));
}

TEST(CenterShiftTest, LengthOneIsIdentity) {
  EXPECT_EQ(center_shift(Spectrum{{7}}).coefficients, (std::vector<Complex>{7}));
}

TEST(CenterShiftTest, LengthSixRotatesByThree) {
  EXPECT_EQ(center_shift(Spectrum{{1, 2, 3, 4, 5, 6}}).coefficients,
            (std::vector<Complex>{4, 5, 6, 1, 2, 3}));
}

TEST(CenterShiftTest, InverseRestoresForOddAndEven) {
  for (std::size_t n : {1u, 2u, 5u, 8u, 9u}) {
    Spectrum s;
    for (std::size_t i = 0; i < n; ++i) s.coefficients.emplace_back(double(i), -double(i));
    const Spectrum centered = center_shift(s);
    // Index 0 of the centered array holds k_c = -floor(n/2).
    EXPECT_EQ(centered.coefficients[0], s.coefficients[(n - n / 2) % n]);
    EXPECT_EQ(inverse_center_shift(centered).coefficients, s.coefficients);
  }
  EXPECT_THROW(center_shift(center_shift(Spectrum{{1, 2}})), InvalidInput);
}

TEST(CenterShiftTest, TwoDimensionalRoundTrip) {
  Spectrum2D s{3, 4, {}, SpectrumConvention::kUnshifted};
  for (int i = 0; i < 12; ++i) s.coefficients.emplace_back(i, 0);
  const Spectrum2D c = center_shift(s);
  // DC moves to (floor(h/2), floor(w/2)).
  EXPECT_EQ(c.at(1, 2), s.at(0, 0));
  EXPECT_EQ(inverse_center_shift(c).coefficients, s.coefficients);
}

TEST(LogMagnitudeTest, FloorAndDecades) {
  const Signal out = log_magnitude(Spectrum{{0, 1, Complex(6, 8)}}, 1e-12);
  EXPECT_NEAR(out[0], -12.0, 1e-12);
  EXPECT_NEAR(out[1], 0.0, 1e-10);
  EXPECT_NEAR(out[2], 1.0, 1e-10);
  EXPECT_THROW(log_magnitude(Spectrum{{1}}, 0.0), InvalidInput);
}

TEST(RadialAverageTest, FlatSpectrum) {
  Spectrum2D s{5, 5, std::vector<Complex>(25, Complex(0, 2.5)),
               SpectrumConvention::kCentered};
  for (const RadialBin& b : radial_average(s, 4)) {
    if (!b.empty) {
      EXPECT_DOUBLE_EQ(b.mean_magnitude, 2.5);
    }
  }
}

TEST(RadialAverageTest, SingleCoefficient) {
  Spectrum2D s{1, 1, {Complex(3, 4)}, SpectrumConvention::kCentered};
  const auto bins = radial_average(s, 1);
  ASSERT_EQ(bins.size(), 1u);
  EXPECT_DOUBLE_EQ(bins[0].mean_magnitude, 5.0);
}

TEST(RadialAverageTest, DeltaImageTwoBins) {
  const auto spectra = dft2(Image(4, 4, 1, {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}));
  const auto bins = radial_average(center_shift(spectra[0]), 2);
  ASSERT_EQ(bins.size(), 2u);
  EXPECT_NEAR(bins[0].mean_magnitude, 1.0, 1e-15);
  EXPECT_NEAR(bins[1].mean_magnitude, 1.0, 1e-15);
  EXPECT_FALSE(bins[0].empty);
  EXPECT_FALSE(bins[1].empty);
}

TEST(RadialAverageTest, Errors) {
  Spectrum2D s{2, 2, std::vector<Complex>(4), SpectrumConvention::kCentered};
  EXPECT_THROW(radial_average(s, 0), InvalidInput);
  s.convention = SpectrumConvention::kUnshifted;
  EXPECT_THROW(radial_average(s, 2), InvalidInput);
}

}  // namespace
}  // namespace upspec
