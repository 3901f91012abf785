#include "binv/raster.hpp"

#include <zlib.h>

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace binv {

RasterImage RasterImage::filled(int width, int height, Rgba color) {
    if (width < 1 || height < 1)
        throw InvalidInputError("RasterImage: dimensions must be >= 1");
    RasterImage img;
    img.width = width;
    img.height = height;
    img.pixels.resize(static_cast<std::size_t>(width) * height * 4);
    for (std::size_t i = 0; i < img.pixels.size(); i += 4)
        std::memcpy(&img.pixels[i], color.data(), 4);
    return img;
}

Rgba RasterImage::at(int x, int y) const {
    if (!in_bounds(x, y)) throw InvalidInputError("RasterImage::at: out of bounds");
    Rgba c;
    std::memcpy(c.data(), &pixels[(static_cast<std::size_t>(y) * width + x) * 4], 4);
    return c;
}

void RasterImage::set(int x, int y, Rgba color) {
    if (!in_bounds(x, y)) throw InvalidInputError("RasterImage::set: out of bounds");
    std::memcpy(&pixels[(static_cast<std::size_t>(y) * width + x) * 4], color.data(), 4);
}

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

std::uint32_t get_u32(const std::uint8_t* p) {
    return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
           (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

void append_chunk(std::vector<std::uint8_t>& out, const char type[4],
                  const std::vector<std::uint8_t>& data) {
    put_u32(out, static_cast<std::uint32_t>(data.size()));
    std::size_t crc_start = out.size();
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), data.begin(), data.end());
    std::uint32_t crc = crc32(0L, out.data() + crc_start, static_cast<uInt>(4 + data.size()));
    put_u32(out, crc);
}

std::vector<std::uint8_t> zlib_compress(const std::vector<std::uint8_t>& in) {
    uLongf bound = compressBound(static_cast<uLong>(in.size()));
    std::vector<std::uint8_t> out(bound);
    // Fixed level for byte-stable output.
    if (compress2(out.data(), &bound, in.data(), static_cast<uLong>(in.size()), 6) != Z_OK)
        throw std::runtime_error("png: deflate failed");
    out.resize(bound);
    return out;
}

std::vector<std::uint8_t> zlib_decompress(const std::vector<std::uint8_t>& in,
                                          std::size_t expected) {
    std::vector<std::uint8_t> out(expected);
    uLongf len = static_cast<uLongf>(expected);
    if (uncompress(out.data(), &len, in.data(), static_cast<uLong>(in.size())) != Z_OK ||
        len != expected)
        throw std::runtime_error("png: inflate failed");
    return out;
}

constexpr std::uint8_t kPngSig[8] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};

int paeth(int a, int b, int c) {
    int p = a + b - c;
    int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
    if (pa <= pb && pa <= pc) return a;
    if (pb <= pc) return b;
    return c;
}

}  // namespace

std::vector<std::uint8_t> encode_png(const RasterImage& image) {
    if (image.width < 1 || image.height < 1 ||
        image.pixels.size() != static_cast<std::size_t>(image.width) * image.height * 4)
        throw InvalidInputError("encode_png: malformed image");

    std::vector<std::uint8_t> out(kPngSig, kPngSig + 8);

    std::vector<std::uint8_t> ihdr;
    put_u32(ihdr, static_cast<std::uint32_t>(image.width));
    put_u32(ihdr, static_cast<std::uint32_t>(image.height));
    ihdr.push_back(8);   // bit depth
    ihdr.push_back(6);   // RGBA
    ihdr.push_back(0);   // compression
    ihdr.push_back(0);   // filter
    ihdr.push_back(0);   // no interlace
    append_chunk(out, "IHDR", ihdr);

    // Filter type 0 on every scanline: deterministic and trivially invertible.
    const std::size_t stride = static_cast<std::size_t>(image.width) * 4;
    std::vector<std::uint8_t> raw;
    raw.reserve((stride + 1) * image.height);
    for (int y = 0; y < image.height; ++y) {
        raw.push_back(0);
        const std::uint8_t* row = image.pixels.data() + y * stride;
        raw.insert(raw.end(), row, row + stride);
    }
    append_chunk(out, "IDAT", zlib_compress(raw));
    append_chunk(out, "IEND", {});
    return out;
}

RasterImage decode_png(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 8 || std::memcmp(bytes.data(), kPngSig, 8) != 0)
        throw std::runtime_error("png: bad signature");

    std::size_t pos = 8;
    std::uint32_t width = 0, height = 0;
    int color_type = -1;
    std::vector<std::uint8_t> idat;
    while (pos + 8 <= bytes.size()) {
        std::uint32_t len = get_u32(&bytes[pos]);
        if (pos + 12 + len > bytes.size()) throw std::runtime_error("png: truncated chunk");
        const char* type = reinterpret_cast<const char*>(&bytes[pos + 4]);
        const std::uint8_t* data = &bytes[pos + 8];
        if (std::memcmp(type, "IHDR", 4) == 0) {
            width = get_u32(data);
            height = get_u32(data + 4);
            int depth = data[8];
            color_type = data[9];
            if (depth != 8) throw std::runtime_error("png: only 8-bit depth supported");
            if (color_type != 0 && color_type != 2 && color_type != 6)
                throw std::runtime_error("png: unsupported color type");
            if (data[12] != 0) throw std::runtime_error("png: interlace unsupported");
        } else if (std::memcmp(type, "IDAT", 4) == 0) {
            idat.insert(idat.end(), data, data + len);
        } else if (std::memcmp(type, "IEND", 4) == 0) {
            break;
        }
        pos += 12 + len;
    }
    if (width == 0 || height == 0 || color_type < 0 || idat.empty())
        throw std::runtime_error("png: missing IHDR/IDAT");

    const int channels = color_type == 6 ? 4 : color_type == 2 ? 3 : 1;
    const std::size_t stride = static_cast<std::size_t>(width) * channels;
    std::vector<std::uint8_t> raw = zlib_decompress(idat, (stride + 1) * height);

    // Undo per-scanline filters.
    std::vector<std::uint8_t> flat(stride * height);
    for (std::uint32_t y = 0; y < height; ++y) {
        std::uint8_t filter = raw[y * (stride + 1)];
        const std::uint8_t* src = &raw[y * (stride + 1) + 1];
        std::uint8_t* dst = &flat[y * stride];
        const std::uint8_t* prev = y > 0 ? &flat[(y - 1) * stride] : nullptr;
        for (std::size_t i = 0; i < stride; ++i) {
            int a = i >= static_cast<std::size_t>(channels) ? dst[i - channels] : 0;
            int b = prev ? prev[i] : 0;
            int c = (prev && i >= static_cast<std::size_t>(channels)) ? prev[i - channels] : 0;
            int v = src[i];
            switch (filter) {
                case 0: break;
                case 1: v += a; break;
                case 2: v += b; break;
                case 3: v += (a + b) / 2; break;
                case 4: v += paeth(a, b, c); break;
                default: throw std::runtime_error("png: unknown filter");
            }
            dst[i] = static_cast<std::uint8_t>(v & 0xFF);
        }
    }

    RasterImage img;
    img.width = static_cast<int>(width);
    img.height = static_cast<int>(height);
    img.pixels.resize(static_cast<std::size_t>(width) * height * 4);
    for (std::size_t px = 0; px < static_cast<std::size_t>(width) * height; ++px) {
        const std::uint8_t* s = &flat[px * channels];
        std::uint8_t* d = &img.pixels[px * 4];
        if (channels == 4) {
            std::memcpy(d, s, 4);
        } else if (channels == 3) {
            d[0] = s[0]; d[1] = s[1]; d[2] = s[2]; d[3] = 255;
        } else {
            d[0] = d[1] = d[2] = s[0]; d[3] = 255;
        }
    }
    return img;
}

void write_png(const std::string& path, const RasterImage& image) {
    auto bytes = encode_png(image);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_png: cannot open " + path);
    f.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

RasterImage read_png(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("read_png: cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                    std::istreambuf_iterator<char>());
    return decode_png(bytes);
}

}  // namespace binv
