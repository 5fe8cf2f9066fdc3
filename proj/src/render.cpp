#include "univalence/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <string>

#include "univalence/parallel.hpp"

namespace univalence {

void Image::set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    const std::size_t k = 3 * (static_cast<std::size_t>(y) * width + x);
    rgb[k] = r;
    rgb[k + 1] = g;
    rgb[k + 2] = b;
}

std::vector<std::uint8_t> encode_ppm(const Image& image) {
    const std::string header = "P6\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), image.rgb.begin(), image.rgb.end());
    return out;
}

void write_ppm(const Image& image, const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
    const auto bytes = encode_ppm(image);
    file.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!file) throw Error(ErrorKind::Io, "failed writing " + path.string());
}

namespace {

std::uint8_t channel(double v) {
    return static_cast<std::uint8_t>(std::clamp<long>(std::lround(v), 0, 255));
}

struct Rgb {
    double r, g, b;
};

constexpr Rgb kWhite{255, 255, 255};
constexpr Rgb kBlue{0, 64, 192};
constexpr Rgb kRed{200, 16, 16};

Rgb mix(Rgb from, Rgb to, double s) {
    return {from.r + s * (to.r - from.r), from.g + s * (to.g - from.g), from.b + s * (to.b - from.b)};
}

double hue_to_rgb(double p, double q, double t) {
    if (t < 0.0) t += 1.0;
    if (t > 1.0) t -= 1.0;
    if (t < 1.0 / 6.0) return p + (q - p) * 6.0 * t;
    if (t < 0.5) return q;
    if (t < 2.0 / 3.0) return p + (q - p) * (2.0 / 3.0 - t) * 6.0;
    return p;
}

Rgb hsl(double h, double s, double l) {
    const double q = l < 0.5 ? l * (1.0 + s) : l + s - l * s;
    const double p = 2.0 * l - q;
    return {255.0 * hue_to_rgb(p, q, h + 1.0 / 3.0), 255.0 * hue_to_rgb(p, q, h),
            255.0 * hue_to_rgb(p, q, h - 1.0 / 3.0)};
}

}  // namespace

Image margin_heatmap(const MarginField& field) {
    Image img{field.grid.n_theta, field.grid.n_r, {}};
    img.rgb.assign(static_cast<std::size_t>(img.width) * img.height * 3, 0);
    double hi = 0.0, lo = 0.0;
    for (double m : field.margins) {
        hi = std::max(hi, m);
        lo = std::min(lo, m);
    }
    for (int i = 0; i < img.height; ++i) {
        for (int j = 0; j < img.width; ++j) {
            const double m = field.margins[static_cast<std::size_t>(i) * img.width + j];
            const Rgb c = m >= 0.0 ? mix(kWhite, kBlue, hi > 0.0 ? m / hi : 0.0) : mix(kWhite, kRed, m / lo);
            img.set(j, i, channel(c.r), channel(c.g), channel(c.b));
        }
    }
    return img;
}

void render_margin_heatmap(const MarginField& field, const std::filesystem::path& path) {
    for (double m : field.margins)
        if (!std::isfinite(m)) throw Error(ErrorKind::Validation, "margin field contains non-finite values");
    write_ppm(margin_heatmap(field), path);
}

Image unit_heatmap(const std::vector<double>& values, int width, int height) {
    Image img{width, height, {}};
    img.rgb.assign(static_cast<std::size_t>(width) * height * 3, 0);
    for (int i = 0; i < height; ++i) {
        for (int j = 0; j < width; ++j) {
            const double v = values[static_cast<std::size_t>(i) * width + j];
            const Rgb c = v >= 1.0 ? kRed : mix(kWhite, kBlue, std::clamp(v, 0.0, 1.0));
            img.set(j, i, channel(c.r), channel(c.g), channel(c.b));
        }
    }
    return img;
}

DomainColoring domain_coloring(const std::function<Complex(Complex)>& map, const Window& window, unsigned threads) {
    const int n = window.pixels;
    if (n < 1 || !(window.half_width > 0.0)) throw Error(ErrorKind::Validation, "window needs pixels >= 1 and half_width > 0");
    DomainColoring out;
    out.image = Image{n, n, std::vector<std::uint8_t>(static_cast<std::size_t>(n) * n * 3, 0)};
    std::vector<char> failed(static_cast<std::size_t>(n) * n, 0);
    const double step = 2.0 * window.half_width / n;
    parallel_for(static_cast<std::size_t>(n) * n, threads, [&](std::size_t k) {
        const int px = static_cast<int>(k % n), py = static_cast<int>(k / n);
        const Complex z(window.center.real() - window.half_width + (px + 0.5) * step,
                        window.center.imag() + window.half_width - (py + 0.5) * step);
        Complex w;
        try {
            w = map(z);
        } catch (const Error&) {
            failed[k] = 1;
            return;
        }
        const double mod = std::abs(w);
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag()) || mod == 0.0) {
            failed[k] = std::isfinite(mod) ? 0 : 1;
            return;
        }
        double hue = std::arg(w) / (2.0 * std::numbers::pi);
        if (hue < 0.0) hue += 1.0;
        const double band = std::log2(mod);
        const double light = 0.35 + 0.3 * (band - std::floor(band));
        const Rgb c = hsl(hue, 1.0, light);
        out.image.set(px, py, channel(c.r), channel(c.g), channel(c.b));
    });
    out.error_pixels = static_cast<std::size_t>(std::count(failed.begin(), failed.end(), 1));
    return out;
}

std::size_t render_domain_coloring(const std::function<Complex(Complex)>& map, const Window& window,
                                   const std::filesystem::path& path, unsigned threads) {
    const DomainColoring dc = domain_coloring(map, window, threads);
    write_ppm(dc.image, path);
    return dc.error_pixels;
}

}  // namespace univalence
