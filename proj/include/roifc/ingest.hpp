#pragma once

#include <cstdint>
#include <filesystem>

#include "roifc/core.hpp"

namespace roifc {

/// Parameters of the synthetic dataset generator. Each vehicle gets a
/// unit-norm prototype drawn uniformly on the D-sphere; inside and outside
/// records are the prototype plus isotropic Gaussian noise of the given
/// scale. Fully determined by the seed.
struct SyntheticSpec {
    std::size_t n_vehicles = 1;
    std::size_t images_inside_per_vehicle = 1;
    std::size_t images_outside_per_vehicle = 1;
    std::size_t dim = 2;
    double sigma_inside = 0.0;
    double sigma_outside = 0.0;
    std::uint64_t seed = 0;

    void validate() const;
};

Dataset generate_synthetic(const SyntheticSpec& spec);

/// Text format: UTF-8, header row
///   vehicle_id,camera_id,condition,frame_index,roi,f0,...,f{D-1}
/// with roi being the literal "in" or "out" (case-sensitive). Floats are
/// written in shortest round-trip form, so load(write(ds)) is value-identical.
Dataset load_csv(const std::filesystem::path& path);
void write_csv(const Dataset& dataset, const std::filesystem::path& path);

/// Binary feature store (.rfcs): header [magic "RFCS"][version u16 = 1]
/// [dim u32][record_count u64], then per record three length-prefixed strings
/// (u16 length; vehicle, camera, condition), frame_index u64, roi u8
/// (0 = inside, 1 = outside), and dim float64 values. All integers and
/// floats little-endian. Serialize/deserialize round-trips byte-identically.
Dataset load_binary(const std::filesystem::path& path);
void write_binary(const Dataset& dataset, const std::filesystem::path& path);

/// Dispatches on extension: ".csv" or ".rfcs".
Dataset load_auto(const std::filesystem::path& path);
void write_auto(const Dataset& dataset, const std::filesystem::path& path);

}  // namespace roifc
