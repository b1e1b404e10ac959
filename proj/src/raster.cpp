#include "mbinv/raster.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

namespace mbinv {

namespace {

std::string kind_text(ParseError::Kind kind) {
  switch (kind) {
    case ParseError::Kind::MalformedHeader:
      return "malformed header";
    case ParseError::Kind::TruncatedPayload:
      return "truncated payload";
    case ParseError::Kind::ZeroMaxval:
      return "maxval is zero";
    case ParseError::Kind::SampleOutOfRange:
      return "sample exceeds maxval";
  }
  return "parse error";
}

// Tokenizer over the PGM header and ASCII payload. Comments run from '#' to
// the end of the line.
class PgmCursor {
 public:
  explicit PgmCursor(std::span<const unsigned char> bytes) : bytes_(bytes) {}

  std::size_t offset() const noexcept { return pos_; }
  bool at_end() const noexcept { return pos_ >= bytes_.size(); }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const unsigned char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  // Returns false when no digits are present at the cursor.
  bool read_unsigned(unsigned long long& value) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 0xFFFFFFFFull) return false;
      ++pos_;
    }
    return pos_ > start;
  }

  std::span<const unsigned char> rest() const { return bytes_.subspan(pos_); }
  void advance(std::size_t n) { pos_ += n; }
  unsigned char peek() const { return bytes_[pos_]; }

 private:
  std::span<const unsigned char> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

ParseError::ParseError(Kind kind, std::size_t offset, const std::string& detail)
    : Error(kind_text(kind) + " at byte " + std::to_string(offset) +
            (detail.empty() ? "" : ": " + detail)),
      kind_(kind),
      offset_(offset) {}

Image::Image(std::size_t width, std::size_t height, std::vector<double> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)), frame_(width, height) {
  if (width_ == 0 || height_ == 0) throw std::invalid_argument("image dimensions must be >= 1");
  if (pixels_.size() != width_ * height_)
    throw std::invalid_argument("pixel count does not match width*height");
  for (double v : pixels_) {
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("image intensities must be finite and non-negative");
  }
}

Image Image::zeros(std::size_t width, std::size_t height) {
  return Image(width, height, std::vector<double>(width * height, 0.0));
}

double Image::total_mass() const noexcept {
  // Neumaier summation; the images are small enough that this is never hot.
  double sum = 0.0;
  double comp = 0.0;
  for (double v : pixels_) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

std::size_t Image::zero_margin() const noexcept {
  std::size_t min_r = height_, max_r = 0, min_c = width_, max_c = 0;
  bool any = false;
  for (std::size_t r = 0; r < height_; ++r) {
    for (std::size_t c = 0; c < width_; ++c) {
      if (pixels_[r * width_ + c] != 0.0) {
        any = true;
        min_r = std::min(min_r, r);
        max_r = std::max(max_r, r);
        min_c = std::min(min_c, c);
        max_c = std::max(max_c, c);
      }
    }
  }
  if (!any) return std::max(width_, height_);
  return std::min({min_r, height_ - 1 - max_r, min_c, width_ - 1 - max_c});
}

double Image::content_radius(Point pivot) const noexcept {
  double best = -1.0;
  for (std::size_t r = 0; r < height_; ++r) {
    for (std::size_t c = 0; c < width_; ++c) {
      if (pixels_[r * width_ + c] == 0.0) continue;
      const Point p = frame_.to_continuous(static_cast<double>(r), static_cast<double>(c));
      best = std::max(best, std::hypot(p.x - pivot.x, p.y - pivot.y));
    }
  }
  return best;
}

Image parse_pgm(std::span<const unsigned char> bytes) {
  using K = ParseError::Kind;
  PgmCursor cur(bytes);
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5'))
    throw ParseError(K::MalformedHeader, 0, "expected magic P2 or P5");
  const bool binary = bytes[1] == '5';
  cur.advance(2);
  if (!cur.at_end() && !std::isspace(cur.peek()) && cur.peek() != '#')
    throw ParseError(K::MalformedHeader, cur.offset(), "missing whitespace after magic");

  unsigned long long width = 0, height = 0, maxval = 0;
  if (!cur.read_unsigned(width) || width == 0)
    throw ParseError(K::MalformedHeader, cur.offset(), "bad width");
  if (!cur.read_unsigned(height) || height == 0)
    throw ParseError(K::MalformedHeader, cur.offset(), "bad height");
  const std::size_t maxval_offset = (cur.skip_space_and_comments(), cur.offset());
  if (!cur.read_unsigned(maxval)) throw ParseError(K::MalformedHeader, cur.offset(), "bad maxval");
  if (maxval == 0) throw ParseError(K::ZeroMaxval, maxval_offset, "");
  if (maxval > 65535) throw ParseError(K::MalformedHeader, maxval_offset, "maxval above 65535");

  const std::size_t count = static_cast<std::size_t>(width * height);
  std::vector<double> pixels(count);
  const double scale = 1.0 / static_cast<double>(maxval);

  if (binary) {
    if (cur.at_end() || !std::isspace(cur.peek()))
      throw ParseError(K::MalformedHeader, cur.offset(), "missing whitespace before raster");
    cur.advance(1);
    const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
    const auto payload = cur.rest();
    if (payload.size() < count * bytes_per_sample)
      throw ParseError(K::TruncatedPayload, cur.offset() + payload.size(),
                       "expected " + std::to_string(count * bytes_per_sample) + " bytes, found " +
                           std::to_string(payload.size()));
    for (std::size_t i = 0; i < count; ++i) {
      unsigned v = bytes_per_sample == 2
                       ? (unsigned{payload[2 * i]} << 8) | unsigned{payload[2 * i + 1]}
                       : unsigned{payload[i]};
      if (v > maxval)
        throw ParseError(K::SampleOutOfRange, cur.offset() + i * bytes_per_sample, "");
      pixels[i] = static_cast<double>(v) * scale;
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      cur.skip_space_and_comments();
      if (cur.at_end())
        throw ParseError(K::TruncatedPayload, cur.offset(),
                         "expected " + std::to_string(count) + " samples, found " + std::to_string(i));
      const std::size_t at = cur.offset();
      unsigned long long v = 0;
      if (!cur.read_unsigned(v)) throw ParseError(K::MalformedHeader, at, "non-numeric sample");
      if (v > maxval) throw ParseError(K::SampleOutOfRange, at, "");
      pixels[i] = static_cast<double>(v) * scale;
    }
  }
  return Image(static_cast<std::size_t>(width), static_cast<std::size_t>(height), std::move(pixels));
}

Image load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_pgm(bytes);
}

std::vector<unsigned char> encode_pgm(const Image& img, unsigned maxval, bool binary) {
  if (maxval != 255 && maxval != 65535) throw std::invalid_argument("maxval must be 255 or 65535");
  for (double v : img.pixels()) {
    if (v < 0.0 || v > 1.0) throw std::invalid_argument("intensity outside [0,1] cannot be stored");
  }
  std::ostringstream header;
  header << (binary ? "P5" : "P2") << '\n' << img.width() << ' ' << img.height() << '\n' << maxval << '\n';
  const std::string h = header.str();
  std::vector<unsigned char> out(h.begin(), h.end());

  auto quantize = [maxval](double v) {
    return static_cast<unsigned>(std::min<double>(maxval, std::floor(v * maxval + 0.5)));
  };
  if (binary) {
    for (double v : img.pixels()) {
      const unsigned q = quantize(v);
      if (maxval > 255) out.push_back(static_cast<unsigned char>(q >> 8));
      out.push_back(static_cast<unsigned char>(q & 0xFF));
    }
  } else {
    std::string line;
    for (std::size_t r = 0; r < img.height(); ++r) {
      line.clear();
      for (std::size_t c = 0; c < img.width(); ++c) {
        if (c) line += ' ';
        line += std::to_string(quantize(img.at(r, c)));
      }
      line += '\n';
      out.insert(out.end(), line.begin(), line.end());
    }
  }
  return out;
}

void save_pgm(const Image& img, const std::filesystem::path& path, unsigned maxval, bool binary) {
  const auto bytes = encode_pgm(img, maxval, binary);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

double sample_bilinear(const Image& img, double x, double y) noexcept {
  const double col = img.frame().col_of_x(x);
  const double row = img.frame().row_of_y(y);
  const double c0f = std::floor(col);
  const double r0f = std::floor(row);
  const double w = static_cast<double>(img.width());
  const double h = static_cast<double>(img.height());
  if (!(c0f >= -1.0 && c0f < w && r0f >= -1.0 && r0f < h)) return 0.0;
  const double fc = col - c0f;
  const double fr = row - r0f;
  const auto c0 = static_cast<long>(c0f);
  const auto r0 = static_cast<long>(r0f);
  auto value = [&](long r, long c) -> double {
    if (r < 0 || c < 0 || r >= static_cast<long>(img.height()) || c >= static_cast<long>(img.width()))
      return 0.0;
    return img.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  };
  const double top = (1.0 - fc) * value(r0, c0) + fc * value(r0, c0 + 1);
  const double bottom = (1.0 - fc) * value(r0 + 1, c0) + fc * value(r0 + 1, c0 + 1);
  return (1.0 - fr) * top + fr * bottom;
}

}  // namespace mbinv
