#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace vppsim {

using Hash256 = std::array<std::uint8_t, 32>;

Hash256 sha256(const std::uint8_t* data, std::size_t len);
Hash256 sha256(const std::vector<std::uint8_t>& data);
Hash256 sha256(const std::string& data);

std::string hash_to_hex(const Hash256& h);
// Parses exactly 64 lowercase/uppercase hex chars; throws otherwise.
Hash256 hash_from_hex(const std::string& hex);

inline constexpr Hash256 kZeroHash{};

} // namespace vppsim
