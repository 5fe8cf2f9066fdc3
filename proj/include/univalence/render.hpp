#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <vector>

#include "univalence/criteria.hpp"

namespace univalence {

struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel

    void set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b);
    bool operator==(const Image&) const = default;
};

/// Binary PPM (P6, maxval 255).
void write_ppm(const Image& image, const std::filesystem::path& path);
std::vector<std::uint8_t> encode_ppm(const Image& image);

/// width = n_theta, height = n_r, row 0 is the origin. Margins >= 0 fade
/// white -> (0,64,192) over [0, max]; margins < 0 fade white -> (200,16,16)
/// over [min, 0).
Image margin_heatmap(const MarginField& field);
void render_margin_heatmap(const MarginField& field, const std::filesystem::path& path);

/// Values in [0, 1] fade white -> (0,64,192); values >= 1 are (200,16,16).
Image unit_heatmap(const std::vector<double>& values, int width, int height);

struct Window {
    Complex center{0.0, 0.0};
    double half_width = 1.0;
    int pixels = 256;
};

struct DomainColoring {
    Image image;
    std::size_t error_pixels = 0;
};

/// Hue follows arg, lightness cycles with log2 of the modulus. Pixels where
/// the map throws or returns a non-finite value are black and counted.
DomainColoring domain_coloring(const std::function<Complex(Complex)>& map, const Window& window,
                               unsigned threads = 0);

std::size_t render_domain_coloring(const std::function<Complex(Complex)>& map, const Window& window,
                                   const std::filesystem::path& path, unsigned threads = 0);

}  // namespace univalence
