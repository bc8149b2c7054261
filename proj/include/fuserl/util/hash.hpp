#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace fuserl {

std::uint64_t fnv1a64(std::string_view bytes);

/// Content hash rendered as "fnv1a64:<16 hex digits>".
std::string contentHash(std::string_view bytes);

std::string hashFile(const std::string& path);

std::string readFileBytes(const std::string& path);
void writeFileBytes(const std::string& path, std::string_view bytes);

}  // namespace fuserl
