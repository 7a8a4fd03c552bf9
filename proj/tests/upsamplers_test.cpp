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
#include <numbers>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "upspec/dft.hpp"
#include "upspec/errors.hpp"
#include "upspec/upsamplers.hpp"

namespace upspec {
namespace {

using ::upspec::testing::brute_dft;
using ::upspec::testing::dirichlet;
using ::upspec::testing::random_vector;

void ExpectSignalNear(const Signal& s, const std::vector<double>& expected, double tol) {
  ASSERT_EQ(s.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_NEAR(s[i], expected[i], tol) << "index " << i;
  }
}

Image OuterImage(const std::vector<double>& rows, const std::vector<double>& cols) {
  Image img(rows.size(), cols.size());
  for (std::size_t h = 0; h < rows.size(); ++h) {
    for (std::size_t w = 0; w < cols.size(); ++w) img.at(h, w) = rows[h] * cols[w];
  }
  return img;
}

void ExpectOuterProduct(const Image& img, const Signal& rows, const Signal& cols,
                        double tol) {
  ASSERT_EQ(img.height(), rows.size());
  ASSERT_EQ(img.width(), cols.size());
  for (std::size_t h = 0; h < rows.size(); ++h) {
    for (std::size_t w = 0; w < cols.size(); ++w) {
      EXPECT_NEAR(img.at(h, w), rows[h] * cols[w], tol) << h << "," << w;
    }
  }
}

TEST(UpsampleFactorTest, RejectsBelowTwo) {
  EXPECT_THROW(UpsampleFactor(1), InvalidInput);
  EXPECT_THROW(UpsampleFactor(0), InvalidInput);
  EXPECT_EQ(UpsampleFactor(3).value(), 3);
}

TEST(KernelSpecTest, Invariants) {
  EXPECT_THROW(KernelSpec({}, 2), InvalidInput);
  EXPECT_THROW(KernelSpec({1.0}, 0), InvalidInput);
  EXPECT_THROW(KernelSpec({1.0, NAN}, 2), InvalidInput);
  EXPECT_THROW(KernelSpec({1.0}, 2, std::vector<double>{1, 2, 3}), InvalidInput);
  const KernelSpec k({1, 2, 3, 4}, 2, std::vector<double>{1, 1, 1});
  EXPECT_EQ(k.anchor(), 2u);
  EXPECT_EQ(k.parallel_small()->size(), 3u);
}

TEST(BedOfNailsTest, Definition) {
  ExpectSignalNear(bed_of_nails(Signal{2, 5}, UpsampleFactor(2)), {2, 0, 5, 0}, 0);
  ExpectSignalNear(bed_of_nails(Signal{1, 2, 3}, UpsampleFactor(3)),
                   {1, 0, 0, 2, 0, 0, 3, 0, 0}, 0);
}

TEST(BedOfNailsTest, SpectrumReplicatesLowRateSpectrum) {
  const auto up = brute_dft(bed_of_nails(Signal{1, 2}, UpsampleFactor(2)).to_vector());
  const std::vector<Complex> expected{3, -1, 3, -1};
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(std::abs(up[k] - expected[k]), 0, 1e-15);
}

TEST(BedOfNailsTest, ReplicaIdentityOnRandomSignals) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<std::size_t> len(1, 512);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = len(rng);
    const int r = 2 + trial % 3;
    const Signal x(random_vector(rng, n));
    const Spectrum fx = dft(x);
    const Spectrum fy = dft(bed_of_nails(x, UpsampleFactor(r)));
    for (std::size_t k = 0; k < fy.size(); ++k) {
      ASSERT_LE(std::abs(fy[k] - fx[k % n]), 1e-10) << "n=" << n << " r=" << r;
    }
  }
}

TEST(NearestTest, Definition) {
  ExpectSignalNear(nearest(Signal{1, 2}, UpsampleFactor(2)), {1, 1, 2, 2}, 0);
  ExpectSignalNear(nearest(Signal{5}, UpsampleFactor(4)), {5, 5, 5, 5}, 0);
}

TEST(NearestTest, EqualsZeroInsertionThenCausalBox) {
  std::mt19937_64 rng(22);
  for (int r = 2; r <= 4; ++r) {
    const Signal x(random_vector(rng, 7));
    const Signal z = bed_of_nails(x, UpsampleFactor(r));
    const std::size_t len = z.size();
    std::vector<double> boxed(len, 0.0);
    for (std::size_t p = 0; p < len; ++p) {
      for (int m = 0; m < r; ++m) boxed[p] += z[(p + len - m) % len];
    }
    ExpectSignalNear(nearest(x, UpsampleFactor(r)), boxed, 0);
  }
}

TEST(LinearTest, PeriodicMidpoint) {
  ExpectSignalNear(linear(Signal{0, 4}, UpsampleFactor(2)), {0, 2, 4, 2}, 1e-15);
}

TEST(LinearTest, ZeroPadGhostSample) {
  ExpectSignalNear(linear(Signal{0, 4}, UpsampleFactor(2), BoundaryMode::kZeroPad),
                   {0, 2, 4, 2}, 1e-15);
  ExpectSignalNear(linear(Signal{2, 2}, UpsampleFactor(2), BoundaryMode::kZeroPad),
                   {2, 2, 2, 1}, 1e-15);
}

TEST(LinearTest, ReproducesConstants) {
  for (int r = 2; r <= 5; ++r) {
    const Signal y = linear(Signal{1.5, 1.5, 1.5}, UpsampleFactor(r));
    for (double v : y.samples()) EXPECT_NEAR(v, 1.5, 1e-15);
  }
}

TEST(LinearTest, FactorThreeWeights) {
  ExpectSignalNear(linear(Signal{0, 3}, UpsampleFactor(3)), {0, 1, 2, 3, 2, 1}, 1e-14);
}

TEST(PixelShuffleTest, InterleavesChannels) {
  const std::vector<Signal> ch{Signal{1, 2}, Signal{3, 4}};
  ExpectSignalNear(pixel_shuffle(ch, UpsampleFactor(2)), {1, 3, 2, 4}, 0);
}

TEST(PixelShuffleTest, IdenticalChannelsCollapseToNearest) {
  const Signal x{0.5, -1, 2};
  const std::vector<Signal> ch{x, x};
  EXPECT_EQ(pixel_shuffle(ch, UpsampleFactor(2)), nearest(x, UpsampleFactor(2)));
}

TEST(PixelShuffleTest, WrongChannelCountOrShape) {
  const std::vector<Signal> three{Signal{1}, Signal{2}, Signal{3}};
  EXPECT_THROW(pixel_shuffle(three, UpsampleFactor(2)), InvalidInput);
  const std::vector<Signal> ragged{Signal{1}, Signal{2, 3}};
  EXPECT_THROW(pixel_shuffle(ragged, UpsampleFactor(2)), InvalidInput);
}

TEST(PixelUnshuffleTest, Inverse) {
  const auto ch = pixel_unshuffle(Signal{1, 3, 2, 4}, UpsampleFactor(2));
  ASSERT_EQ(ch.size(), 2u);
  EXPECT_EQ(ch[0], (Signal{1, 2}));
  EXPECT_EQ(ch[1], (Signal{3, 4}));
  EXPECT_EQ(pixel_unshuffle(Signal{1, 2, 3, 4, 5, 6}, UpsampleFactor(2))[0].size(), 3u);
}

TEST(PixelUnshuffleTest, FactorThreeEnumeration) {
  const auto ch = pixel_unshuffle(Signal{0, 1, 2, 3, 4, 5, 6, 7, 8}, UpsampleFactor(3));
  EXPECT_EQ(ch[0], (Signal{0, 3, 6}));
  EXPECT_EQ(ch[1], (Signal{1, 4, 7}));
  EXPECT_EQ(ch[2], (Signal{2, 5, 8}));
  EXPECT_THROW(pixel_unshuffle(Signal{1, 2, 3, 4}, UpsampleFactor(3)), InvalidInput);
}

TEST(PixelShuffle2Test, RowMajorSubPixelOrderAndRoundTrip) {
  std::mt19937_64 rng(23);
  std::vector<Image> ch;
  for (int i = 0; i < 4; ++i) ch.emplace_back(3, 3, 1, random_vector(rng, 9));
  const Image out = pixel_shuffle2(ch, UpsampleFactor(2));
  EXPECT_EQ(out.height(), 6u);
  // out[2h + a, 2w + b] = channel[2a + b][h, w]
  EXPECT_EQ(out.at(2 * 1 + 1, 2 * 2 + 0), ch[2].at(1, 2));
  EXPECT_EQ(out.at(2 * 2 + 0, 2 * 0 + 1), ch[1].at(2, 0));
  const auto back = pixel_unshuffle2(out, UpsampleFactor(2));
  ASSERT_EQ(back.size(), 4u);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(back[i], ch[i]);
  EXPECT_THROW(pixel_unshuffle2(Image(3, 4), UpsampleFactor(2)), InvalidInput);
  EXPECT_THROW(pixel_shuffle2(std::span<const Image>(ch.data(), 3), UpsampleFactor(2)),
               InvalidInput);
}

TEST(TransposedConvTest, TapPlacementAroundAnchor) {
  const KernelSpec k({1, 1, 1}, 2);
  ExpectSignalNear(transposed_conv(Signal{1, 0}, k), {1, 1, 0, 1}, 0);
}

TEST(TransposedConvTest, AnchoredDeltaIsZeroInsertion) {
  const Signal x{0.25, -3, 7, 1};
  EXPECT_EQ(transposed_conv(x, KernelSpec({0, 1, 0}, 2)), bed_of_nails(x, UpsampleFactor(2)));
}

TEST(TransposedConvTest, TriangleKernelIsLinearInterpolation) {
  ExpectSignalNear(transposed_conv(Signal{0, 4}, KernelSpec({0.5, 1, 0.5}, 2)),
                   {0, 2, 4, 2}, 1e-15);
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 50; ++trial) {
    const Signal x(random_vector(rng, 1 + trial));
    const Signal a = transposed_conv(x, KernelSpec({0.5, 1, 0.5}, 2));
    const Signal b = linear(x, UpsampleFactor(2));
    for (std::size_t i = 0; i < a.size(); ++i) ASSERT_NEAR(a[i], b[i], 1e-12);
  }
}

TEST(TransposedConvTest, ZeroPadDropsWrappedTaps) {
  const KernelSpec k({1, 1, 1}, 2);
  ExpectSignalNear(transposed_conv(Signal{1, 0}, k, BoundaryMode::kZeroPad), {1, 1, 0, 0}, 0);
}

TEST(TransposedConvTest, ParallelBranchIsSummed) {
  std::mt19937_64 rng(25);
  const Signal x(random_vector(rng, 9));
  const std::vector<double> big = random_vector(rng, 7);
  const std::vector<double> small = random_vector(rng, 3);
  const Signal both = transposed_conv(x, KernelSpec(big, 2, small));
  const Signal a = transposed_conv(x, KernelSpec(big, 2));
  const Signal b = transposed_conv(x, KernelSpec(small, 2));
  for (std::size_t i = 0; i < both.size(); ++i) EXPECT_NEAR(both[i], a[i] + b[i], 1e-14);
}

TEST(TransposedConvTest, KernelLongerThanOutputWraps) {
  // K = 5 on an output of length 2: offsets -2..2 fold onto both positions.
  ExpectSignalNear(transposed_conv(Signal{1}, KernelSpec({1, 1, 1, 1, 1}, 2)), {3, 2}, 0);
}

TEST(TransposedConv2Test, DeltaKernelIsBedOfNails) {
  std::mt19937_64 rng(26);
  const Image x(3, 4, 2, random_vector(rng, 24));
  std::vector<double> w(9, 0.0);
  w[4] = 1.0;
  EXPECT_EQ(transposed_conv2(x, KernelSpec2D(3, w, 2)), bed_of_nails2(x, UpsampleFactor(2)));
}

TEST(TransposedConv2Test, OuterProductKernelOnOuterProductImage) {
  std::mt19937_64 rng(27);
  const auto xr = random_vector(rng, 4);
  const auto xc = random_vector(rng, 4);
  const KernelSpec kr(random_vector(rng, 5), 2);
  const KernelSpec kc(random_vector(rng, 5), 2);
  const Image out = transposed_conv2(OuterImage(xr, xc), KernelSpec2D::outer(kr, kc));
  ExpectOuterProduct(out, transposed_conv(Signal(xr), kr), transposed_conv(Signal(xc), kc),
                     1e-12);
}

TEST(TransposedConv2Test, AllOnesThreeByThree) {
  const Image out = transposed_conv2(Image(2, 2, 1, {1, 1, 1, 1}),
                                     KernelSpec2D(3, std::vector<double>(9, 1.0), 2));
  // The 1D composition is [1, 2, 1, 2].
  const std::vector<double> line{1, 2, 1, 2};
  for (std::size_t h = 0; h < 4; ++h) {
    for (std::size_t w = 0; w < 4; ++w) EXPECT_DOUBLE_EQ(out.at(h, w), line[h] * line[w]);
  }
}

TEST(TransposedConv2Test, ParallelBranchAndZeroPad) {
  std::mt19937_64 rng(28);
  const Image x(3, 3, 1, random_vector(rng, 9));
  const KernelSpec kr(random_vector(rng, 5), 2, random_vector(rng, 3));
  const KernelSpec2D k = KernelSpec2D::outer(kr, kr);
  ASSERT_TRUE(k.small_size().has_value());
  const Image both = transposed_conv2(x, k, BoundaryMode::kZeroPad);
  const Image big = transposed_conv2(
      x, KernelSpec2D::outer(KernelSpec(std::vector<double>(kr.weights().begin(), kr.weights().end()), 2),
                             KernelSpec(std::vector<double>(kr.weights().begin(), kr.weights().end()), 2)),
      BoundaryMode::kZeroPad);
  const Image small = transposed_conv2(
      x, KernelSpec2D::outer(KernelSpec(*kr.parallel_small(), 2), KernelSpec(*kr.parallel_small(), 2)),
      BoundaryMode::kZeroPad);
  for (std::size_t i = 0; i < both.samples().size(); ++i) {
    EXPECT_NEAR(both.samples()[i], big.samples()[i] + small.samples()[i], 1e-14);
  }
}

TEST(FourierPadTest, BandLimitedCosineBecomesHigherRateCosine) {
  const Signal y = fourier_pad_upsample(Signal{1, 0, -1, 0}, UpsampleFactor(2));
  const double h = std::sqrt(2.0) / 2.0;
  ExpectSignalNear(y, {1, h, 0, -h, -1, -h, 0, h}, 1e-12);
}

TEST(FourierPadTest, ConstantPassesThrough) {
  for (int r = 2; r <= 4; ++r) {
    const Signal y = fourier_pad_upsample(Signal{0.7, 0.7, 0.7, 0.7, 0.7}, UpsampleFactor(r));
    ASSERT_EQ(y.size(), 5u * r);
    for (double v : y.samples()) EXPECT_NEAR(v, 0.7, 1e-14);
  }
}

TEST(FourierPadTest, NyquistIsSplitIntoCosine) {
  // Half of F[2] = 4 at bins +-2 of the length-8 grid gives cos(pi n / 2).
  ExpectSignalNear(fourier_pad_upsample(Signal{1, -1, 1, -1}, UpsampleFactor(2)),
                   {1, 0, -1, 0, 1, 0, -1, 0}, 1e-12);
}

TEST(FourierPadTest, InterpolatesAndIsBandLimited) {
  std::mt19937_64 rng(29);
  for (std::size_t n : {1u, 2u, 3u, 8u, 15u, 64u, 100u}) {
    for (int r : {2, 3}) {
      const Signal x(random_vector(rng, n));
      const Signal y = fourier_pad_upsample(x, UpsampleFactor(r));
      for (std::size_t j = 0; j < n; ++j) ASSERT_NEAR(y[r * j], x[j], 1e-9);
      const Spectrum fy = dft(y);
      for (std::size_t k = 0; k < fy.size(); ++k) {
        const long kc = centered_index(k, fy.size());
        if (2 * std::labs(kc) > static_cast<long>(n)) {
          ASSERT_LE(std::norm(fy[k]), 1e-18) << "n=" << n << " bin " << k;
        }
      }
    }
  }
}

TEST(FourierPad2Test, SeparableOnOuterProducts) {
  std::mt19937_64 rng(30);
  const auto a = random_vector(rng, 4);
  const auto b = random_vector(rng, 5);
  const Image out = fourier_pad_upsample2(OuterImage(a, b), UpsampleFactor(2));
  ExpectOuterProduct(out, fourier_pad_upsample(Signal(a), UpsampleFactor(2)),
                     fourier_pad_upsample(Signal(b), UpsampleFactor(2)), 1e-10);
}

TEST(Separable2DTest, NearestBilinearAndBedOfNailsOnOuterProducts) {
  std::mt19937_64 rng(31);
  const auto a = random_vector(rng, 3);
  const auto b = random_vector(rng, 6);
  const Image img = OuterImage(a, b);
  for (int r : {2, 3}) {
    const UpsampleFactor f(r);
    ExpectOuterProduct(bed_of_nails2(img, f), bed_of_nails(Signal(a), f),
                       bed_of_nails(Signal(b), f), 1e-12);
    ExpectOuterProduct(nearest2(img, f), nearest(Signal(a), f), nearest(Signal(b), f), 1e-12);
    ExpectOuterProduct(linear2(img, f), linear(Signal(a), f), linear(Signal(b), f), 1e-10);
  }
}

TEST(OperatorMatrixTest, BedOfNailsAndNearest) {
  const Eigen::MatrixXd bon = operator_matrix(Upsampler::bed_of_nails(UpsampleFactor(2)), 2);
  Eigen::MatrixXd expected(4, 2);
  expected << 1, 0, 0, 0, 0, 1, 0, 0;
  EXPECT_EQ(bon, expected);
  const Eigen::MatrixXd nn = operator_matrix(Upsampler::nearest(UpsampleFactor(2)), 2);
  expected << 1, 0, 1, 0, 0, 1, 0, 1;
  EXPECT_EQ(nn, expected);
}

TEST(OperatorMatrixTest, FourierPadColumnsAreDirichletKernels) {
  for (std::size_t n : {4u, 5u}) {
    const Eigen::MatrixXd m = operator_matrix(Upsampler::fourier_pad(UpsampleFactor(2)), n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t p = 0; p < 2 * n; ++p) {
        EXPECT_NEAR(m(p, j), dirichlet(static_cast<long>(p) - 2 * static_cast<long>(j), n, 2),
                    1e-12);
      }
    }
  }
}

TEST(OperatorMatrixTest, ProductMatchesDirectApplication) {
  std::mt19937_64 rng(32);
  const Signal x(random_vector(rng, 12));
  const Eigen::Map<const Eigen::VectorXd> xv(x.samples().data(), 12);
  const std::vector<Upsampler> ops{
      Upsampler::bed_of_nails(UpsampleFactor(3)), Upsampler::nearest(UpsampleFactor(2)),
      Upsampler::linear(UpsampleFactor(2), BoundaryMode::kZeroPad),
      Upsampler::transposed(KernelSpec(random_vector(rng, 6), 2)),
      Upsampler::fourier_pad(UpsampleFactor(2))};
  for (const Upsampler& op : ops) {
    const Eigen::VectorXd via_matrix = operator_matrix(op, 12) * xv;
    const Signal direct = apply(op, x);
    for (std::size_t i = 0; i < direct.size(); ++i) {
      EXPECT_NEAR(via_matrix(i), direct[i], 1e-12) << to_string(op.kind);
    }
  }
}

TEST(UpsamplerTest, AllOperatorsAreLinear) {
  std::mt19937_64 rng(33);
  const std::vector<Upsampler> ops{
      Upsampler::bed_of_nails(UpsampleFactor(2)), Upsampler::nearest(UpsampleFactor(3)),
      Upsampler::linear(UpsampleFactor(2)),
      Upsampler::transposed(KernelSpec(random_vector(rng, 7), 2, random_vector(rng, 3))),
      Upsampler::fourier_pad(UpsampleFactor(3))};
  for (const Upsampler& op : ops) {
    for (int trial = 0; trial < 10; ++trial) {
      const Signal x(random_vector(rng, 16));
      const Signal y(random_vector(rng, 16));
      const double a = 1.7;
      const double b = -0.4;
      std::vector<double> combo(16);
      for (std::size_t i = 0; i < 16; ++i) combo[i] = a * x[i] + b * y[i];
      const Signal lhs = apply(op, Signal(combo));
      const Signal ox = apply(op, x);
      const Signal oy = apply(op, y);
      for (std::size_t i = 0; i < lhs.size(); ++i) {
        ASSERT_NEAR(lhs[i], a * ox[i] + b * oy[i], 1e-10) << to_string(op.kind);
      }
    }
  }
}

TEST(UpsamplerTest, KindNamesRoundTrip) {
  EXPECT_EQ(parse_upsampler_kind("fourier_pad"), UpsamplerKind::kFourierPad);
  EXPECT_EQ(to_string(parse_upsampler_kind("nearest")), "nearest");
  EXPECT_THROW(parse_upsampler_kind("bicubic"), InvalidInput);
}

}  // namespace
}  // namespace upspec
