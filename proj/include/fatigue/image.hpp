#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fatigue {

// Decoded 8-bit RGB image, interleaved, row-major.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;

  std::uint8_t* pixel(int x, int y) { return rgb.data() + 3 * (y * width + x); }
  const std::uint8_t* pixel(int x, int y) const {
    return rgb.data() + 3 * (y * width + x);
  }
};

// PNG and JPEG are recognized by magic bytes.
Image decode_image(std::span<const std::uint8_t> bytes);
Image load_image(const std::string& path);
std::vector<std::uint8_t> encode_png(const Image& img);
void save_png(const std::string& path, const Image& img);

// 8-bit grayscale PNG of a [0,1] intensity grid (rows = y).
void save_png_gray(const std::string& path, const Eigen::MatrixXd& intensities);

// Luma conversion with fixed weights 0.299/0.587/0.114, scaled to [0,1].
Eigen::MatrixXd to_gray(const Image& img);

}  // namespace fatigue
