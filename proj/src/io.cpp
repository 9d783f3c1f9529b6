#include "planestereo/io.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <vector>

#include "planestereo/error.hpp"

namespace planestereo {

void CameraCalib::validate() const {
    if (!(focal > 0.0)) {
        throw InvalidConfig("calibration focal length must be positive");
    }
    if (!(baseline > 0.0)) {
        throw InvalidConfig("calibration baseline must be positive");
    }
}

namespace {

bool hasSuffix(const std::string& s, const std::string& suffix) {
    if (s.size() < suffix.size()) {
        return false;
    }
    return std::equal(suffix.rbegin(), suffix.rend(), s.rbegin(), [](char a, char b) {
        return std::tolower((unsigned char)a) == std::tolower((unsigned char)b);
    });
}

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr openFile(const std::string& path, const char* mode) {
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f) {
        throw CorruptFile("cannot open " + path);
    }
    return f;
}

// ---------------------------------------------------------------- raw rows

struct RawImage {
    int width = 0;
    int height = 0;
    int bitDepth = 8;
    std::vector<std::uint8_t> bytes; // 1 or 2 (big-endian) bytes per pixel
};

[[noreturn]] void pngFail(const std::string& path, const char* what) {
    throw CorruptFile(path + ": " + what);
}

RawImage readPngGray(const std::string& path) {
    FilePtr f = openFile(path, "rb");

    std::uint8_t sig[8] = {};
    if (std::fread(sig, 1, 8, f.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
        throw CorruptFile(path + ": not a PNG file");
    }

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw Error("libpng initialization failed");
    }

    RawImage out;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        pngFail(path, "corrupt PNG data");
    }

    png_init_io(png, f.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    const int colorType = png_get_color_type(png, info);
    if (colorType != PNG_COLOR_TYPE_GRAY) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw UnsupportedFormat(path + ": only grayscale PNG is supported");
    }
    if (png_get_bit_depth(png, info) < 8) {
        png_set_expand_gray_1_2_4_to_8(png);
    }
    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    out.width = int(png_get_image_width(png, info));
    out.height = int(png_get_image_height(png, info));
    out.bitDepth = png_get_bit_depth(png, info);
    const std::size_t stride = png_get_rowbytes(png, info);
    out.bytes.resize(stride * out.height);
    rows.resize(out.height);
    for (int v = 0; v < out.height; ++v) {
        rows[v] = out.bytes.data() + stride * v;
    }
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return out;
}

void writePngGray(const std::string& path, int width, int height, int bitDepth,
                  const std::uint8_t* bytes) {
    FilePtr f = openFile(path, "wb");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw Error("libpng initialization failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw CorruptFile(path + ": PNG write failed");
    }

    png_init_io(png, f.get());
    png_set_IHDR(png, info, width, height, bitDepth, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    const std::size_t stride = std::size_t(width) * (bitDepth / 8);
    std::vector<png_bytep> rows(height);
    for (int v = 0; v < height; ++v) {
        rows[v] = const_cast<png_bytep>(bytes + stride * v);
    }
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

RawImage readPgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CorruptFile("cannot open " + path);
    }
    std::string magic;
    in >> magic;
    if (magic != "P5") {
        throw UnsupportedFormat(path + ": only binary PGM (P5) is supported");
    }
    auto nextInt = [&]() {
        // Skips whitespace and '#' comment lines.
        for (;;) {
            const int c = in.peek();
            if (c == '#') {
                std::string line;
                std::getline(in, line);
            } else if (c != EOF && std::isspace(c)) {
                in.get();
            } else {
                break;
            }
        }
        long value = -1;
        in >> value;
        if (!in || value < 0) {
            throw CorruptFile(path + ": malformed PGM header");
        }
        return value;
    };
    const long width = nextInt();
    const long height = nextInt();
    const long maxval = nextInt();
    in.get(); // single whitespace after maxval
    if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 65535) {
        throw CorruptFile(path + ": malformed PGM header");
    }

    RawImage out;
    out.width = int(width);
    out.height = int(height);
    out.bitDepth = maxval > 255 ? 16 : 8;
    out.bytes.resize(std::size_t(width) * height * (out.bitDepth / 8));
    in.read(reinterpret_cast<char*>(out.bytes.data()), std::streamsize(out.bytes.size()));
    if (std::size_t(in.gcount()) != out.bytes.size()) {
        throw CorruptFile(path + ": truncated PGM pixel data");
    }
    return out;
}

} // namespace

GrayImage readGray(const std::string& path, bool* narrowed) {
    RawImage raw;
    {
        std::ifstream probe(path, std::ios::binary);
        if (!probe) {
            throw CorruptFile("cannot open " + path);
        }
        char head[2] = {};
        probe.read(head, 2);
        if (probe.gcount() == 2 && head[0] == 'P' && head[1] == '5') {
            raw = readPgm(path);
        } else if (probe.gcount() == 2 && std::uint8_t(head[0]) == 0x89 && head[1] == 'P') {
            raw = readPngGray(path);
        } else {
            throw UnsupportedFormat(path + ": expected grayscale PNG or PGM");
        }
    }

    if (raw.width < GrayImage::kMinDimension || raw.height < GrayImage::kMinDimension) {
        throw DimensionTooSmall(path + ": image must be at least 16x16");
    }
    if (narrowed) {
        *narrowed = raw.bitDepth == 16;
    }

    std::vector<std::uint8_t> pixels(std::size_t(raw.width) * raw.height);
    if (raw.bitDepth == 8) {
        pixels.assign(raw.bytes.begin(), raw.bytes.end());
    } else {
        for (std::size_t i = 0; i < pixels.size(); ++i) {
            pixels[i] = raw.bytes[2 * i]; // high byte of big-endian sample
        }
    }
    return GrayImage(raw.width, raw.height, std::move(pixels));
}

void writeGray(const GrayImage& image, const std::string& path) {
    if (hasSuffix(path, ".png")) {
        writePngGray(path, image.width(), image.height(), 8, image.data().data());
    } else if (hasSuffix(path, ".pgm")) {
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw CorruptFile("cannot open " + path);
        }
        out << "P5\n" << image.width() << ' ' << image.height() << "\n255\n";
        out.write(reinterpret_cast<const char*>(image.data().data()),
                  std::streamsize(image.data().size()));
        if (!out) {
            throw CorruptFile(path + ": write failed");
        }
    } else {
        throw UnsupportedFormat(path + ": expected a .png or .pgm destination");
    }
}

namespace {

float swapToLittleEndian(float value, bool fileLittleEndian) {
    if (fileLittleEndian == (std::endian::native == std::endian::little)) {
        return value;
    }
    std::uint32_t bits;
    std::memcpy(&bits, &value, 4);
    bits = ((bits & 0xff000000u) >> 24) | ((bits & 0x00ff0000u) >> 8) |
           ((bits & 0x0000ff00u) << 8) | ((bits & 0x000000ffu) << 24);
    std::memcpy(&value, &bits, 4);
    return value;
}

DisparityMap readPfm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CorruptFile("cannot open " + path);
    }
    std::string magic;
    in >> magic;
    if (magic == "PF") {
        throw UnsupportedFormat(path + ": color PFM is not a disparity map");
    }
    if (magic != "Pf") {
        throw CorruptFile(path + ": not a PFM file");
    }
    int width = 0;
    int height = 0;
    double scale = 0.0;
    in >> width >> height >> scale;
    if (!in || width <= 0 || height <= 0 || scale == 0.0) {
        throw CorruptFile(path + ": malformed PFM header");
    }
    in.get(); // single newline before the raster

    const bool fileLittleEndian = scale < 0.0;
    std::vector<float> row(width);
    DisparityMap map(width, height);
    for (int r = 0; r < height; ++r) {
        const int v = height - 1 - r; // bottom-up storage
        in.read(reinterpret_cast<char*>(row.data()), std::streamsize(row.size() * 4));
        if (std::size_t(in.gcount()) != row.size() * 4) {
            throw CorruptFile(path + ": truncated PFM raster");
        }
        for (int u = 0; u < width; ++u) {
            const float d = swapToLittleEndian(row[u], fileLittleEndian);
            if (std::isfinite(d) && d > 0.0f) {
                map.set(u, v, d);
            }
        }
    }
    return map;
}

void writePfm(const DisparityMap& map, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw CorruptFile("cannot open " + path);
    }
    out << "Pf\n" << map.width() << ' ' << map.height() << "\n-1.0\n";
    std::vector<float> row(map.width());
    for (int r = 0; r < map.height(); ++r) {
        const int v = map.height() - 1 - r;
        for (int u = 0; u < map.width(); ++u) {
            const float d = map.valid(u, v) ? map.at(u, v) : -1.0f;
            row[u] = swapToLittleEndian(d, true);
        }
        out.write(reinterpret_cast<const char*>(row.data()), std::streamsize(row.size() * 4));
    }
    if (!out) {
        throw CorruptFile(path + ": write failed");
    }
}

DisparityMap readKittiPng(const std::string& path) {
    const RawImage raw = readPngGray(path);
    if (raw.bitDepth != 16) {
        throw UnsupportedFormat(path + ": disparity PNG must be 16-bit grayscale");
    }
    DisparityMap map(raw.width, raw.height);
    for (int v = 0; v < raw.height; ++v) {
        const std::uint8_t* row = raw.bytes.data() + std::size_t(v) * raw.width * 2;
        for (int u = 0; u < raw.width; ++u) {
            const unsigned r16 = unsigned(row[2 * u]) << 8 | row[2 * u + 1];
            if (r16 > 0) {
                map.set(u, v, float(r16) / 256.0f);
            }
        }
    }
    return map;
}

void writeKittiPng(const DisparityMap& map, const std::string& path) {
    std::vector<std::uint8_t> bytes(std::size_t(map.width()) * map.height() * 2, 0);
    for (int v = 0; v < map.height(); ++v) {
        std::uint8_t* row = bytes.data() + std::size_t(v) * map.width() * 2;
        for (int u = 0; u < map.width(); ++u) {
            if (!map.valid(u, v)) {
                continue;
            }
            const float d = map.at(u, v);
            if (d < 0.0f) {
                throw NegativeDisparity("cannot encode negative disparity " + std::to_string(d));
            }
            long raw = std::lround(double(d) * 256.0);
            raw = std::clamp(raw, 1L, 65535L); // raw 0 is reserved for invalid
            row[2 * u] = std::uint8_t(raw >> 8);
            row[2 * u + 1] = std::uint8_t(raw & 0xff);
        }
    }
    writePngGray(path, map.width(), map.height(), 16, bytes.data());
}

} // namespace

DisparityEncoding encodingForPath(const std::string& path) {
    if (hasSuffix(path, ".pfm")) {
        return DisparityEncoding::Pfm;
    }
    if (hasSuffix(path, ".png")) {
        return DisparityEncoding::KittiPng;
    }
    throw UnsupportedFormat(path + ": expected a .pfm or .png disparity file");
}

DisparityMap readDisparity(const std::string& path, DisparityEncoding encoding) {
    return encoding == DisparityEncoding::Pfm ? readPfm(path) : readKittiPng(path);
}

void writeDisparity(const DisparityMap& map, const std::string& path,
                    DisparityEncoding encoding) {
    if (encoding == DisparityEncoding::Pfm) {
        writePfm(map, path);
    } else {
        writeKittiPng(map, path);
    }
}

void exportPointCloud(const DisparityMap& disparity, const GrayImage& image,
                      const CameraCalib& calib, const std::string& path, PlyFormat format,
                      double minDisparity) {
    calib.validate();
    if (disparity.width() != image.width() || disparity.height() != image.height()) {
        throw DimensionMismatch("disparity map and image dimensions differ");
    }

    struct Vertex {
        float x, y, z;
        std::uint8_t intensity;
    };
    std::vector<Vertex> cloud;
    for (int v = 0; v < disparity.height(); ++v) {
        for (int u = 0; u < disparity.width(); ++u) {
            if (!disparity.valid(u, v)) {
                continue;
            }
            const double d = disparity.at(u, v);
            if (d < minDisparity) {
                continue;
            }
            const double z = calib.focal * calib.baseline / d;
            const double x = (u - calib.cx) * z / calib.focal;
            const double y = (v - calib.cy) * z / calib.focal;
            cloud.push_back({float(x), float(y), float(z), image.at(u, v)});
        }
    }
    if (cloud.empty()) {
        throw EmptyCloud("no valid pixels above the minimum disparity");
    }

    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw CorruptFile("cannot open " + path);
    }
    out << "ply\nformat "
        << (format == PlyFormat::Ascii ? "ascii" : "binary_little_endian") << " 1.0\n"
        << "element vertex " << cloud.size() << "\n"
        << "property float x\nproperty float y\nproperty float z\n"
        << "property uchar red\nproperty uchar green\nproperty uchar blue\n"
        << "end_header\n";
    if (format == PlyFormat::Ascii) {
        for (const Vertex& p : cloud) {
            out << p.x << ' ' << p.y << ' ' << p.z << ' ' << int(p.intensity) << ' '
                << int(p.intensity) << ' ' << int(p.intensity) << '\n';
        }
    } else {
        for (const Vertex& p : cloud) {
            float coords[3] = {swapToLittleEndian(p.x, true), swapToLittleEndian(p.y, true),
                               swapToLittleEndian(p.z, true)};
            const std::uint8_t rgb[3] = {p.intensity, p.intensity, p.intensity};
            out.write(reinterpret_cast<const char*>(coords), 12);
            out.write(reinterpret_cast<const char*>(rgb), 3);
        }
    }
    if (!out) {
        throw CorruptFile(path + ": write failed");
    }
}

} // namespace planestereo
