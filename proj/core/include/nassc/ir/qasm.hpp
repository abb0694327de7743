#pragma once

#include <string>
#include <string_view>

#include "nassc/ir/circuit.hpp"

namespace nassc::ir {

// OpenQASM 2.0 subset: one qreg, any number of cregs, the supported gate
// kinds plus u1/u2/u/ccx (rewritten), measure and barrier.
Circuit parse_qasm(std::string_view text);
Circuit load_qasm(const std::string& path);

std::string to_qasm(const Circuit& c);
void save_qasm(const Circuit& c, const std::string& path);

// Evaluates "pi/2", "-3*pi/4", "0.25", "(1+2)*pi" and similar.
double eval_angle(std::string_view expr);

}  // namespace nassc::ir
