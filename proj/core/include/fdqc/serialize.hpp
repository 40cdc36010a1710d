#pragma once

// Stable JSON renderings of transcripts and attack reports. Key order and
// number formatting are deterministic, so equal inputs serialize to equal
// bytes; tests and the CLI rely on that.

#include <string>

#include "fdqc/blindness.hpp"
#include "fdqc/protocol.hpp"

namespace fdqc {

std::string to_json(const Transcript& transcript);
std::string to_json(const AttackReport& report);

}  // namespace fdqc
