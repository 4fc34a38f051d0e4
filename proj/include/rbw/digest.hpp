#pragma once

// SHA-256 fingerprints of relation matrices, for cache keys and reports.

#include "rbw/sparse.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace rbw {

inline std::string sha256_hex(const std::string& data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx) throw std::runtime_error("EVP_MD_CTX_new failed");
    bool ok = EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) == 1 && EVP_DigestUpdate(ctx, data.data(), data.size()) == 1 &&
              EVP_DigestFinal_ex(ctx, md.data(), &len) == 1;
    EVP_MD_CTX_free(ctx);
    if (!ok) throw std::runtime_error("sha256 failed");
    std::string hex;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", md[i]);
        hex += buf;
    }
    return hex;
}

/// Hash of "rows cols" followed by one line "col:value ..." per row.
inline std::string matrix_digest(const std::vector<SparseRow>& rows, std::size_t cols) {
    std::string text = std::to_string(rows.size()) + " " + std::to_string(cols) + "\n";
    for (const auto& r : rows) {
        for (const auto& [c, v] : r) text += std::to_string(c) + ":" + v.get_str() + " ";
        text += "\n";
    }
    return sha256_hex(text);
}

}  // namespace rbw
