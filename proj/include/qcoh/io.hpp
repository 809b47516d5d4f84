// JSON file formats: state files ({"dim", "kind", "data"}), multislit
// configuration files, and helpers shared by the CLI. Doubles in state files
// are written with 17 significant digits.

#pragma once

#include <string>
#include <variant>

#include "qcoh/multislit.hpp"
#include "qcoh/states.hpp"

namespace qcoh {

using StateFile = std::variant<PureState, DensityMatrix>;

StateFile read_state_file(const std::string& path);
void write_state_file(const std::string& path, const PureState& psi);
void write_state_file(const std::string& path, const DensityMatrix& rho);

struct MultiSlitConfig {
    QuantonSpec quanton;
    DetectorModel detector;
};

MultiSlitConfig read_multislit_config(const std::string& path);

} // namespace qcoh
