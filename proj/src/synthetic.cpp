#include "vpl/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <vector>

#include "vpl/sampling.hpp"

namespace vpl {

namespace {

constexpr int kSide = static_cast<int>(kGarmentSide);
using Image = Eigen::Matrix<double, kSide, kSide>;

struct Point {
  double x;  // column
  double y;  // row
};

// Even-odd fill over pixel centres at integer coordinates.
void fill_polygon(Image& img, std::initializer_list<Point> pts, double value) {
  const std::vector<Point> poly(pts);
  for (int row = 0; row < kSide; ++row) {
    for (int col = 0; col < kSide; ++col) {
      bool inside = false;
      for (std::size_t a = 0, b = poly.size() - 1; a < poly.size(); b = a++) {
        const Point& p = poly[a];
        const Point& q = poly[b];
        if ((p.y > row) != (q.y > row) && col < (q.x - p.x) * (row - p.y) / (q.y - p.y) + p.x) {
          inside = !inside;
        }
      }
      if (inside) img(row, col) = value;
    }
  }
}

bool in_ellipse(int row, int col, double cr, double cc, double rr, double rc) {
  if (rr <= 0.0 || rc <= 0.0) return false;
  const double dr = (row - cr) / rr;
  const double dc = (col - cc) / rc;
  return dr * dr + dc * dc < 1.0;
}

int clamp_index(double v) { return std::clamp(static_cast<int>(v), 0, kSide); }

void fill_block(Image& img, double r0, double r1, double c0, double c1, double value) {
  for (int r = clamp_index(r0); r < clamp_index(r1); ++r) {
    for (int c = clamp_index(c0); c < clamp_index(c1); ++c) img(r, c) = value;
  }
}

Image silhouette(Index cls, CounterRng& rng) {
  Image img = Image::Zero();
  const double cx = 14.0 + 1.2 * rng.normal();
  const double top = 4.0 + rng.normal();
  const double bot = 24.0 + rng.normal();
  const double w = rng.uniform(7.0, 10.0);
  const double v = rng.uniform(0.5, 1.0);

  switch (cls) {
    case 0:    // t-shirt
    case 2:    // pullover
    case 4:    // coat
    case 6: {  // shirt
      const double sleeve = cls == 0   ? rng.uniform(3.0, 6.0)
                            : cls == 2 ? rng.uniform(12.0, 17.0)
                            : cls == 4 ? rng.uniform(13.0, 18.0)
                                       : rng.uniform(11.0, 16.0);
      fill_polygon(img, {{cx - w, top}, {cx + w, top}, {cx + w, bot}, {cx - w, bot}}, v);
      const double sw = rng.uniform(3.0, 5.0);
      const double left = v * rng.uniform(0.8, 1.0);
      fill_polygon(img, {{cx - w, top}, {cx - w - sw, top + 0.3 * sleeve},
                         {cx - w - sw - 2, top + sleeve}, {cx - w, top + sleeve}}, left);
      const double right = v * rng.uniform(0.8, 1.0);
      fill_polygon(img, {{cx + w, top}, {cx + w + sw, top + 0.3 * sleeve},
                         {cx + w + sw + 2, top + sleeve}, {cx + w, top + sleeve}}, right);
      if (cls == 4) {
        fill_polygon(img, {{cx - 0.6, top}, {cx + 0.6, top}, {cx + 0.6, bot}, {cx - 0.6, bot}},
                     0.3 * v);
      } else if (cls == 6) {
        fill_polygon(img, {{cx - 3, top}, {cx, top + 4}, {cx + 3, top}}, 0.5 * v);
        const int col = clamp_index(cx);
        for (int r = clamp_index(top) + 5; r < clamp_index(bot) && col < kSide; r += 3) {
          img(r, col) = 0.2 * v;
        }
      } else if (cls == 2) {
        for (int r = clamp_index(bot - 2); r < clamp_index(bot + 1); ++r) {
          for (int c = clamp_index(cx - w); c < clamp_index(cx + w); ++c) img(r, c) *= 0.7;
        }
      }
      break;
    }
    case 1: {  // trouser
      const double gap = rng.uniform(0.5, 2.0);
      fill_polygon(img, {{cx - 0.7 * w, 2}, {cx + 0.7 * w, 2}, {cx + 0.7 * w, 26},
                         {cx + gap, 26}, {cx - gap, 8}, {cx - 0.7 * w, 26}}, v);
      fill_polygon(img, {{cx - gap, 26}, {cx + gap, 26}, {cx + 0.2 * gap, 8}}, 0.0);
      break;
    }
    case 3:  // dress
      fill_polygon(img, {{cx - 0.45 * w, top - 1}, {cx + 0.45 * w, top - 1},
                         {cx + 1.3 * w, bot + 2}, {cx - 1.3 * w, bot + 2}}, v);
      break;
    case 5:    // sandal
    case 7:    // sneaker
    case 9: {  // ankle boot
      const double base = rng.uniform(18.0, 22.0);
      const double h = cls == 5   ? rng.uniform(4.0, 6.0)
                       : cls == 7 ? rng.uniform(6.0, 9.0)
                                  : rng.uniform(14.0, 18.0);
      const double len = rng.uniform(10.0, 13.0);
      if (cls == 9) {
        fill_polygon(img, {{cx - len, base - h}, {cx - len + 7, base - h}, {cx - len + 8, base - 6},
                           {cx + len, base - 3}, {cx + len, base + 2}, {cx - len, base + 2}}, v);
      } else {
        fill_polygon(img, {{cx - len, base - h}, {cx - len + 2, base - h},
                           {cx + len - 5, base - h + 1}, {cx + len, base - 2},
                           {cx + len, base + 2}, {cx - len, base + 2}}, v);
      }
      if (cls == 5) {
        for (int c = clamp_index(cx - len) + 2; c < clamp_index(cx + len); c += 3) {
          fill_block(img, base - h, base + 1, c, c + 1, 0.0);
        }
      } else if (cls == 7) {
        fill_block(img, base + 1, base + 3, cx - len, cx + len, 1.1 * v);
      }
      break;
    }
    case 8: {  // bag
      const double bw = rng.uniform(8.0, 12.0);
      const double bt = rng.uniform(9.0, 12.0);
      fill_polygon(img, {{cx - bw, bt}, {cx + bw, bt}, {cx + bw, 25}, {cx - bw, 25}}, v);
      for (int r = 0; r < std::min(kSide, clamp_index(bt)); ++r) {
        for (int c = 0; c < kSide; ++c) {
          if (in_ellipse(r, c, bt, cx, bt - 3, 0.5 * bw) &&
              !in_ellipse(r, c, bt, cx, bt - 5, 0.5 * bw - 2)) {
            img(r, c) = v;
          }
        }
      }
      break;
    }
    default: break;
  }

  const double texture = rng.uniform(0.0, 0.3);
  for (int r = 0; r < kSide; ++r) {
    for (int c = 0; c < kSide; ++c) img(r, c) *= 1.0 - texture + texture * rng.uniform();
  }
  if (rng.uniform() < 0.5) {
    const double freq = rng.uniform(0.5, 2.0);
    for (int r = 0; r < kSide; ++r) img.row(r) *= 1.0 + 0.3 * std::sin(r * freq);
  }
  for (int r = 0; r < kSide; ++r) {
    for (int c = 0; c < kSide; ++c) {
      img(r, c) = std::clamp(img(r, c) + 0.05 * rng.normal(), 0.0, 1.0);
    }
  }
  return (img * 255.0).array().round().matrix() / 255.0;
}

double bilinear(const Image& img, double r, double c) {
  const int r0 = static_cast<int>(std::floor(r));
  const int c0 = static_cast<int>(std::floor(c));
  const double fr = r - r0;
  const double fc = c - c0;
  auto at = [&](int rr, int cc) {
    return rr < 0 || cc < 0 || rr >= kSide || cc >= kSide ? 0.0 : img(rr, cc);
  };
  return (1 - fr) * ((1 - fc) * at(r0, c0) + fc * at(r0, c0 + 1)) +
         fr * ((1 - fc) * at(r0 + 1, c0) + fc * at(r0 + 1, c0 + 1));
}

// Random similarity-ish warp, contrast and gain, then sensor noise.
Image distort(const Image& src, CounterRng& rng) {
  const double scale = rng.uniform(0.85, 1.1);
  const double aspect = rng.uniform(0.85, 1.15);
  const double theta = 0.05 * rng.normal();
  Eigen::Matrix2d m;
  m << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  m = m * Eigen::Vector2d(1.0 / (scale * aspect), aspect / scale).asDiagonal();
  const Eigen::Vector2d centre(13.5, 13.5);
  const Eigen::Vector2d offset =
      centre - m * centre + Eigen::Vector2d(rng.normal(), rng.normal());
  const double gamma = rng.uniform(0.6, 1.6);
  const double gain = rng.uniform(0.5, 1.0);

  Image out;
  for (int r = 0; r < kSide; ++r) {
    for (int c = 0; c < kSide; ++c) {
      const Eigen::Vector2d s = m * Eigen::Vector2d(r, c) + offset;
      out(r, c) = bilinear(src, s[0], s[1]);
    }
  }
  for (int r = 0; r < kSide; ++r) {
    for (int c = 0; c < kSide; ++c) {
      const double value = std::pow(out(r, c), gamma) * gain + 0.08 * rng.normal();
      out(r, c) = std::round(255.0 * std::clamp(value, 0.0, 1.0));
    }
  }
  return out;
}

}  // namespace

SyntheticImages make_garment_images(Index count, std::uint64_t seed) {
  SyntheticImages data;
  data.pixels.resize(count, kGarmentSide * kGarmentSide);
  data.labels.resize(static_cast<std::size_t>(count));
  for (Index i = 0; i < count; ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    const Index cls = i % kGarmentClasses;
    const Image img = distort(silhouette(cls, rng), rng);
    data.labels[i] = cls;
    // Row-major flattening, matching the usual image-to-vector convention.
    for (int r = 0; r < kSide; ++r) {
      for (int c = 0; c < kSide; ++c) data.pixels(i, r * kSide + c) = img(r, c);
    }
  }
  return data;
}

}  // namespace vpl
