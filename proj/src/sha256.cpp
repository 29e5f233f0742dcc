#include "vppsim/sha256.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace vppsim {

Hash256 sha256(const std::uint8_t* data, std::size_t len) {
    Hash256 out{};
    unsigned int out_len = 0;
    if (EVP_Digest(data, len, out.data(), &out_len, EVP_sha256(), nullptr) != 1 || out_len != out.size())
        throw std::runtime_error("sha256: digest failed");
    return out;
}

Hash256 sha256(const std::vector<std::uint8_t>& data) { return sha256(data.data(), data.size()); }

Hash256 sha256(const std::string& data) {
    return sha256(reinterpret_cast<const std::uint8_t*>(data.data()), data.size());
}

std::string hash_to_hex(const Hash256& h) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(64);
    for (std::uint8_t b : h) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

static int hex_val(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

Hash256 hash_from_hex(const std::string& hex) {
    if (hex.size() != 64) throw std::invalid_argument("hash_from_hex: need 64 hex chars");
    Hash256 out{};
    for (std::size_t i = 0; i < 32; ++i) {
        int hi = hex_val(hex[2 * i]), lo = hex_val(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) throw std::invalid_argument("hash_from_hex: bad hex digit");
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

} // namespace vppsim
