#pragma once

#include <string>

#include "hermlat/io.hpp"

namespace support {

inline std::string data(const std::string& rel) { return std::string(HERMLAT_DATA_DIR) + "/" + rel; }

inline hermlat::number_field field(const std::string& name) {
    return hermlat::io::load_field(data("fields/" + name + ".json")).field;
}

inline hermlat::hermitian_bundle bundle(const std::string& name) {
    return hermlat::io::load_bundle(data("bundles/" + name + ".json"));
}

inline const char* field_names[] = {"q", "q_i", "q_sqrt2", "q_sqrt_m2", "q_sqrt_m3", "q_zeta5", "q_sqrt5"};
inline const char* bundle_names[] = {"z1_trivial", "z2_identity", "z2_diag", "qi_rank2", "sqrt2_rank2"};

}  // namespace support
