// Copyright 2026 The sparseucm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sparseucm/netpbm.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

namespace sucm {

namespace {

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FormatError("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, const std::string& bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw FormatError("cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw FormatError("write failed for " + path.string());
}

/// Whitespace-separated header tokens with '#' comments, as used by netpbm.
class HeaderReader {
public:
    HeaderReader(const std::string& bytes, const std::filesystem::path& path)
        : bytes_(bytes), path_(path)
    {
    }

    std::string token()
    {
        skip_space_and_comments();
        const std::size_t start = pos_;
        while (pos_ < bytes_.size() && !std::isspace(static_cast<unsigned char>(bytes_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("truncated header");
        return bytes_.substr(start, pos_ - start);
    }

    long integer()
    {
        const std::string t = token();
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(t, &used);
        } catch (const std::exception&) {
            fail("bad integer '" + t + "'");
        }
        if (used != t.size())
            fail("bad integer '" + t + "'");
        return v;
    }

    double real()
    {
        const std::string t = token();
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            fail("bad number '" + t + "'");
        }
        if (used != t.size())
            fail("bad number '" + t + "'");
        return v;
    }

    /// Consumes the single whitespace byte that ends the header.
    std::size_t payload_offset()
    {
        if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_])))
            fail("missing whitespace before payload");
        return pos_ + 1;
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw FormatError(path_.string() + ": " + what);
    }

private:
    void skip_space_and_comments()
    {
        while (pos_ < bytes_.size()) {
            const char ch = bytes_[pos_];
            if (ch == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n')
                    ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(ch))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    const std::string& bytes_;
    const std::filesystem::path& path_;
    std::size_t pos_ = 0;
};

void check_dims(HeaderReader& header, long w, long h)
{
    if (w < 1 || h < 1 || w > (1L << 20) || h > (1L << 20))
        header.fail("invalid dimensions");
}

} // namespace

PgmImage read_pgm(const std::filesystem::path& path)
{
    const std::string bytes = read_file(path);
    HeaderReader header(bytes, path);
    if (header.token() != "P5")
        header.fail("magic mismatch, expected P5");
    const long w = header.integer();
    const long h = header.integer();
    check_dims(header, w, h);
    const long maxval = header.integer();
    if (maxval < 1 || maxval > 65535)
        header.fail("maxval outside 1..65535");
    const std::size_t offset = header.payload_offset();
    const std::size_t sample_bytes = maxval < 256 ? 1 : 2;
    const std::size_t need = static_cast<std::size_t>(w * h) * sample_bytes;
    if (bytes.size() - offset < need)
        header.fail("truncated payload");

    PgmImage image;
    image.maxval = static_cast<int>(maxval);
    image.samples.resize(h, w);
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data() + offset);
    for (Eigen::Index i = 0; i < image.samples.size(); ++i) {
        const unsigned v = sample_bytes == 1 ? p[i] : (unsigned(p[2 * i]) << 8) | p[2 * i + 1];
        if (v > static_cast<unsigned>(maxval))
            header.fail("sample exceeds maxval");
        image.samples.data()[i] = static_cast<std::uint16_t>(v);
    }
    return image;
}

void write_pgm(const PgmImage& image, const std::filesystem::path& path)
{
    if (image.maxval < 1 || image.maxval > 65535)
        throw ContractError("write_pgm: maxval outside 1..65535");
    if (image.samples.size() == 0)
        throw ContractError("write_pgm: empty image");
    std::string bytes = "P5\n" + std::to_string(image.samples.cols()) + " " +
                        std::to_string(image.samples.rows()) + "\n" +
                        std::to_string(image.maxval) + "\n";
    const bool wide = image.maxval >= 256;
    bytes.reserve(bytes.size() + static_cast<std::size_t>(image.samples.size()) * (wide ? 2 : 1));
    for (Eigen::Index i = 0; i < image.samples.size(); ++i) {
        const std::uint16_t v = image.samples.data()[i];
        if (v > image.maxval)
            throw ContractError("write_pgm: sample exceeds maxval");
        if (wide)
            bytes.push_back(static_cast<char>(v >> 8));
        bytes.push_back(static_cast<char>(v & 0xff));
    }
    write_file(path, bytes);
}

LabelMap read_pgm_labels(const std::filesystem::path& path, bool compact)
{
    LabelMap raw(read_pgm(path).samples.cast<std::int32_t>());
    return compact ? compact_labels(raw) : raw;
}

ContourMap read_pgm_contours(const std::filesystem::path& path)
{
    const PgmImage image = read_pgm(path);
    return ContourMap(image.samples.cast<float>() / static_cast<float>(image.maxval));
}

void write_pgm(const LabelMap& labels, const std::filesystem::path& path, int bit_depth)
{
    if (bit_depth != 8 && bit_depth != 16)
        throw ContractError("write_pgm: bit depth must be 8 or 16");
    PgmImage image;
    image.maxval = bit_depth == 8 ? 255 : 65535;
    if (labels.labels().maxCoeff() > image.maxval)
        throw ContractError("write_pgm: label " + std::to_string(labels.labels().maxCoeff()) +
                            " exceeds " + std::to_string(bit_depth) + "-bit range");
    image.samples = labels.labels().cast<std::uint16_t>();
    write_pgm(image, path);
}

void write_pgm(const ContourMap& map, const std::filesystem::path& path, int bit_depth)
{
    if (bit_depth != 8 && bit_depth != 16)
        throw ContractError("write_pgm: bit depth must be 8 or 16");
    PgmImage image;
    image.maxval = bit_depth == 8 ? 255 : 65535;
    image.samples = (map.values().cast<double>() * image.maxval).round().cast<std::uint16_t>();
    write_pgm(image, path);
}

Raster<float> read_pfm_raw(const std::filesystem::path& path)
{
    const std::string bytes = read_file(path);
    HeaderReader header(bytes, path);
    const std::string magic = header.token();
    if (magic == "PF")
        header.fail("color PFM (PF) is not supported");
    if (magic != "Pf")
        header.fail("magic mismatch, expected Pf");
    const long w = header.integer();
    const long h = header.integer();
    check_dims(header, w, h);
    const double scale = header.real();
    if (scale == 0.0 || !std::isfinite(scale))
        header.fail("invalid scale");
    const bool little = scale < 0.0;
    const std::size_t offset = header.payload_offset();
    const std::size_t need = static_cast<std::size_t>(w * h) * 4;
    if (bytes.size() - offset < need)
        header.fail("truncated payload");

    Raster<float> values(h, w);
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data() + offset);
    for (long r = 0; r < h; ++r) {
        for (long c = 0; c < w; ++c) {
            const unsigned char* b = p + 4 * (r * w + c);
            std::uint32_t bits = little ? (std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 |
                                           std::uint32_t(b[2]) << 16 | std::uint32_t(b[3]) << 24)
                                        : (std::uint32_t(b[3]) | std::uint32_t(b[2]) << 8 |
                                           std::uint32_t(b[1]) << 16 | std::uint32_t(b[0]) << 24);
            const float v = std::bit_cast<float>(bits);
            if (std::isnan(v))
                header.fail("NaN value in payload");
            values(h - 1 - r, c) = v;
        }
    }
    return values;
}

void write_pfm(const Raster<float>& values, const std::filesystem::path& path)
{
    if (values.size() == 0)
        throw ContractError("write_pfm: empty map");
    std::string bytes = "Pf\n" + std::to_string(values.cols()) + " " +
                        std::to_string(values.rows()) + "\n-1.0\n";
    const std::size_t header = bytes.size();
    bytes.resize(header + static_cast<std::size_t>(values.size()) * 4);
    auto* p = reinterpret_cast<unsigned char*>(bytes.data() + header);
    for (Eigen::Index r = 0; r < values.rows(); ++r) {
        for (Eigen::Index c = 0; c < values.cols(); ++c) {
            const auto bits = std::bit_cast<std::uint32_t>(values(values.rows() - 1 - r, c));
            unsigned char* b = p + 4 * (r * values.cols() + c);
            b[0] = static_cast<unsigned char>(bits);
            b[1] = static_cast<unsigned char>(bits >> 8);
            b[2] = static_cast<unsigned char>(bits >> 16);
            b[3] = static_cast<unsigned char>(bits >> 24);
        }
    }
    write_file(path, bytes);
}

PfmContours read_pfm(const std::filesystem::path& path)
{
    std::size_t clamped = 0;
    ContourMap map = ContourMap::clamped(read_pfm_raw(path), &clamped);
    return {std::move(map), clamped};
}

void write_pfm(const ContourMap& map, const std::filesystem::path& path)
{
    write_pfm(map.values(), path);
}

OrientationMap read_orientation_pfm(const std::filesystem::path& path)
{
    const Raster<float> raw = read_pfm_raw(path);
    Raster<double> angles = raw.cast<double>();
    for (Eigen::Index i = 0; i < angles.size(); ++i) {
        double& a = angles.data()[i];
        if (!std::isfinite(a))
            throw FormatError(path.string() + ": non-finite angle");
        a = wrap_angle(a);
    }
    return OrientationMap(std::move(angles));
}

void write_pfm(const OrientationMap& angles, const std::filesystem::path& path)
{
    write_pfm(Raster<float>(angles.angles().cast<float>()), path);
}

std::filesystem::path bin_file(const std::filesystem::path& dir, int k)
{
    return dir / ("bins_k" + std::to_string(k) + ".pfm");
}

BinStack read_bin_stack(const std::filesystem::path& dir, int K, std::size_t* clamped)
{
    if (K < 2)
        throw ContractError("read_bin_stack: K must be >= 2");
    if (!std::filesystem::is_directory(dir))
        throw FormatError("bin directory not found: " + dir.string());
    int present = 0;
    while (std::filesystem::exists(bin_file(dir, present + 1)))
        ++present;
    if (present != K)
        throw ContractError("K mismatch: " + dir.string() + " holds " + std::to_string(present) +
                            " bins, expected " + std::to_string(K));
    std::vector<Raster<float>> responses;
    std::size_t total = 0;
    for (int k = 1; k <= K; ++k) {
        PfmContours bin = read_pfm(bin_file(dir, k));
        total += bin.clamped;
        responses.push_back(bin.map.values());
    }
    if (clamped)
        *clamped = total;
    return BinStack(std::move(responses));
}

void write_bin_stack(const BinStack& bins, const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    for (int k = 0; k < bins.bins(); ++k)
        write_pfm(bins.bin(k), bin_file(dir, k + 1));
}

} // namespace sucm
