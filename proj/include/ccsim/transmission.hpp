#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ccsim {

struct SubfileRef {
    int file = 0;
    std::uint64_t slot = 0;
};

/// One broadcast message: a scheme-specific label, the subfile terms it XORs,
/// and (once materialized against a FileStore) the payload bytes.
struct Transmission {
    std::string label;
    std::vector<SubfileRef> terms;
    std::vector<std::uint8_t> payload;
};

std::string to_hex(const std::vector<std::uint8_t>& bytes);

void xor_into(std::vector<std::uint8_t>& acc, const std::vector<std::uint8_t>& block);

}  // namespace ccsim
