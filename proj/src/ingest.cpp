#include "roifc/ingest.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "roifc/rng.hpp"

namespace roifc {

namespace {

constexpr const char* kModule = "ingest";
constexpr char kMagic[4] = {'R', 'F', 'C', 'S'};
constexpr std::uint16_t kFormatVersion = 1;

[[noreturn]] void parse_fail(const std::filesystem::path& path, std::size_t row,
                             std::size_t column, const std::string& what) {
    throw Error(ErrorKind::ParseError, kModule,
                path.string() + ":" + std::to_string(row) + ": column " +
                    std::to_string(column) + ": " + what);
}

double parse_double(std::string_view token, const std::filesystem::path& path,
                    std::size_t row, std::size_t column) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        parse_fail(path, row, column, "invalid floating-point value '" + std::string(token) + "'");
    }
    return value;
}

std::uint64_t parse_u64(std::string_view token, const std::filesystem::path& path,
                        std::size_t row, std::size_t column) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        parse_fail(path, row, column, "invalid non-negative integer '" + std::string(token) + "'");
    }
    return value;
}

std::vector<std::string_view> split_line(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

std::string format_double(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

// Little-endian primitives for the binary store.

void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_f64(std::string& out, double v) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &v, sizeof(bits));
    put_u64(out, bits);
}

class ByteReader {
public:
    ByteReader(const std::string& data, const std::filesystem::path& path)
        : data_(data), path_(path) {}

    std::uint16_t u16() { return static_cast<std::uint16_t>(read_le(2)); }
    std::uint32_t u32() { return static_cast<std::uint32_t>(read_le(4)); }
    std::uint64_t u64() { return read_le(8); }
    std::uint8_t u8() { return static_cast<std::uint8_t>(read_le(1)); }

    double f64() {
        const std::uint64_t bits = u64();
        double v = 0.0;
        std::memcpy(&v, &bits, sizeof(v));
        return v;
    }

    std::string bytes(std::size_t count) {
        need(count);
        std::string out = data_.substr(pos_, count);
        pos_ += count;
        return out;
    }

    std::size_t remaining() const { return data_.size() - pos_; }

private:
    void need(std::size_t count) const {
        if (data_.size() - pos_ < count) {
            throw Error(ErrorKind::TruncatedFile, kModule,
                        path_.string() + ": needed " + std::to_string(count) +
                            " more bytes at offset " + std::to_string(pos_));
        }
    }

    std::uint64_t read_le(std::size_t width) {
        need(width);
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < width; ++i) {
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i]))
                 << (8 * i);
        }
        pos_ += width;
        return v;
    }

    const std::string& data_;
    const std::filesystem::path& path_;
    std::size_t pos_ = 0;
};

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::IoError, kModule, "cannot open '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return std::move(buffer).str();
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorKind::IoError, kModule, "cannot open '" + path.string() + "' for writing");
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw Error(ErrorKind::IoError, kModule, "write to '" + path.string() + "' failed");
    }
}

}  // namespace

void SyntheticSpec::validate() const {
    if (n_vehicles == 0 || images_inside_per_vehicle == 0 ||
        images_outside_per_vehicle == 0 || dim == 0) {
        throw Error(ErrorKind::InvalidArgument, kModule,
                    "vehicle count, per-vehicle image counts and dimension must be positive");
    }
    if (sigma_inside < 0.0 || sigma_outside < 0.0) {
        throw Error(ErrorKind::InvalidArgument, kModule, "noise scales must be non-negative");
    }
}

Dataset generate_synthetic(const SyntheticSpec& spec) {
    spec.validate();
    GaussianSampler gauss(spec.seed);

    std::vector<FeatureRecord> records;
    records.reserve(spec.n_vehicles *
                    (spec.images_inside_per_vehicle + spec.images_outside_per_vehicle));

    for (std::size_t v = 0; v < spec.n_vehicles; ++v) {
        char id[32];
        std::snprintf(id, sizeof(id), "v%04zu", v);

        // Unit-norm prototype, uniform on the sphere.
        std::vector<double> prototype(spec.dim);
        double norm = 0.0;
        do {
            norm = 0.0;
            for (auto& x : prototype) {
                x = gauss.next();
                norm += x * x;
            }
            norm = std::sqrt(norm);
        } while (norm == 0.0);
        for (auto& x : prototype) x /= norm;

        auto emit = [&](RoiFlag roi, std::size_t count, double sigma,
                        std::uint64_t frame_base) {
            for (std::size_t k = 0; k < count; ++k) {
                FeatureRecord rec;
                rec.vehicle_id = id;
                rec.camera_id = "cam1";
                rec.condition = "synthetic";
                rec.frame_index = frame_base + k;
                rec.roi = roi;
                rec.feature.resize(spec.dim);
                for (std::size_t d = 0; d < spec.dim; ++d) {
                    rec.feature[d] = prototype[d] + sigma * gauss.next();
                }
                records.push_back(std::move(rec));
            }
        };
        emit(RoiFlag::Inside, spec.images_inside_per_vehicle, spec.sigma_inside, 0);
        emit(RoiFlag::Outside, spec.images_outside_per_vehicle, spec.sigma_outside,
             spec.images_inside_per_vehicle);
    }
    return build_dataset(std::move(records));
}

Dataset load_csv(const std::filesystem::path& path) {
    const std::string content = read_file(path);

    std::vector<FeatureRecord> records;
    std::size_t row = 0;
    std::size_t line_start = 0;
    std::size_t expected_fields = 0;

    while (line_start <= content.size()) {
        std::size_t line_end = content.find('\n', line_start);
        if (line_end == std::string::npos) line_end = content.size();
        std::string_view line(content.data() + line_start, line_end - line_start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        const std::size_t next_start = line_end + 1;
        ++row;

        if (line.empty()) {
            if (line_end == content.size()) break;  // trailing newline
            parse_fail(path, row, 1, "empty line");
        }

        const auto fields = split_line(line);
        if (row == 1) {
            if (fields.size() < 6 || fields[0] != "vehicle_id" || fields[1] != "camera_id" ||
                fields[2] != "condition" || fields[3] != "frame_index" || fields[4] != "roi") {
                parse_fail(path, 1, 1,
                           "header must be vehicle_id,camera_id,condition,frame_index,roi,f0,...");
            }
            for (std::size_t c = 5; c < fields.size(); ++c) {
                const std::string expected = "f" + std::to_string(c - 5);
                if (fields[c] != expected) {
                    parse_fail(path, 1, c + 1, "expected column '" + expected + "'");
                }
            }
            expected_fields = fields.size();
        } else {
            if (fields.size() != expected_fields) {
                parse_fail(path, row, 1,
                           "expected " + std::to_string(expected_fields) + " fields, got " +
                               std::to_string(fields.size()));
            }
            FeatureRecord rec;
            rec.vehicle_id = std::string(fields[0]);
            rec.camera_id = std::string(fields[1]);
            rec.condition = std::string(fields[2]);
            rec.frame_index = parse_u64(fields[3], path, row, 4);
            if (fields[4] == "in") {
                rec.roi = RoiFlag::Inside;
            } else if (fields[4] == "out") {
                rec.roi = RoiFlag::Outside;
            } else {
                throw Error(ErrorKind::InvalidRoiLabel, kModule,
                            path.string() + ":" + std::to_string(row) +
                                ": roi must be 'in' or 'out', got '" +
                                std::string(fields[4]) + "'");
            }
            rec.feature.reserve(expected_fields - 5);
            for (std::size_t c = 5; c < fields.size(); ++c) {
                rec.feature.push_back(parse_double(fields[c], path, row, c + 1));
            }
            records.push_back(std::move(rec));
        }

        if (line_end == content.size()) break;
        line_start = next_start;
    }

    if (row == 0) {
        throw Error(ErrorKind::EmptyInput, kModule, path.string() + ": file is empty");
    }
    return build_dataset(std::move(records));
}

void write_csv(const Dataset& dataset, const std::filesystem::path& path) {
    std::string out;
    out += "vehicle_id,camera_id,condition,frame_index,roi";
    for (std::size_t d = 0; d < dataset.dim(); ++d) {
        out += ",f" + std::to_string(d);
    }
    out += '\n';
    for (const auto& rec : dataset.records()) {
        out += rec.vehicle_id;
        out += ',';
        out += rec.camera_id;
        out += ',';
        out += rec.condition;
        out += ',';
        out += std::to_string(rec.frame_index);
        out += ',';
        out += rec.roi == RoiFlag::Inside ? "in" : "out";
        for (double v : rec.feature) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    write_file(path, out);
}

Dataset load_binary(const std::filesystem::path& path) {
    const std::string content = read_file(path);
    ByteReader reader(content, path);

    const std::string magic = reader.bytes(4);
    if (std::memcmp(magic.data(), kMagic, 4) != 0) {
        throw Error(ErrorKind::BadMagic, kModule,
                    path.string() + ": magic is '" + magic + "', expected 'RFCS'");
    }
    const std::uint16_t version = reader.u16();
    if (version != kFormatVersion) {
        throw Error(ErrorKind::UnsupportedVersion, kModule,
                    path.string() + ": version " + std::to_string(version) +
                        ", expected " + std::to_string(kFormatVersion));
    }
    const std::uint32_t dim = reader.u32();
    const std::uint64_t record_count = reader.u64();

    std::vector<FeatureRecord> records;
    records.reserve(record_count);
    for (std::uint64_t r = 0; r < record_count; ++r) {
        FeatureRecord rec;
        rec.vehicle_id = reader.bytes(reader.u16());
        rec.camera_id = reader.bytes(reader.u16());
        rec.condition = reader.bytes(reader.u16());
        rec.frame_index = reader.u64();
        const std::uint8_t roi = reader.u8();
        if (roi > 1) {
            throw Error(ErrorKind::InvalidRoiLabel, kModule,
                        path.string() + ": record " + std::to_string(r) +
                            ": roi byte must be 0 or 1, got " + std::to_string(roi));
        }
        rec.roi = roi == 0 ? RoiFlag::Inside : RoiFlag::Outside;
        rec.feature.resize(dim);
        for (std::uint32_t d = 0; d < dim; ++d) {
            rec.feature[d] = reader.f64();
        }
        records.push_back(std::move(rec));
    }
    if (reader.remaining() != 0) {
        throw Error(ErrorKind::ParseError, kModule,
                    path.string() + ": " + std::to_string(reader.remaining()) +
                        " trailing bytes after the last record");
    }
    return build_dataset(std::move(records));
}

void write_binary(const Dataset& dataset, const std::filesystem::path& path) {
    std::string out;
    out.append(kMagic, 4);
    put_u16(out, kFormatVersion);
    put_u32(out, static_cast<std::uint32_t>(dataset.dim()));
    put_u64(out, dataset.records().size());

    for (const auto& rec : dataset.records()) {
        for (const std::string* s : {&rec.vehicle_id, &rec.camera_id, &rec.condition}) {
            if (s->size() > 0xFFFF) {
                throw Error(ErrorKind::InvalidArgument, kModule,
                            "string field exceeds 65535 bytes");
            }
            put_u16(out, static_cast<std::uint16_t>(s->size()));
            out += *s;
        }
        put_u64(out, rec.frame_index);
        out.push_back(rec.roi == RoiFlag::Inside ? '\x00' : '\x01');
        for (double v : rec.feature) put_f64(out, v);
    }
    write_file(path, out);
}

Dataset load_auto(const std::filesystem::path& path) {
    const auto ext = path.extension().string();
    if (ext == ".csv") return load_csv(path);
    if (ext == ".rfcs") return load_binary(path);
    throw Error(ErrorKind::InvalidArgument, kModule,
                "unrecognized extension '" + ext + "' (expected .csv or .rfcs)");
}

void write_auto(const Dataset& dataset, const std::filesystem::path& path) {
    const auto ext = path.extension().string();
    if (ext == ".csv") {
        write_csv(dataset, path);
    } else if (ext == ".rfcs") {
        write_binary(dataset, path);
    } else {
        throw Error(ErrorKind::InvalidArgument, kModule,
                    "unrecognized extension '" + ext + "' (expected .csv or .rfcs)");
    }
}

}  // namespace roifc
