#pragma once

#include <cstdint>
#include <string>

namespace sumcover {

// SHA-256, hex digest. Used for input/report digests only (not security).
std::string sha256_hex(const void* data, size_t len);
std::string sha256_hex(const std::string& s);

}  // namespace sumcover
