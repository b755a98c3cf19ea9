#pragma once

#include "extscen/power.hpp"

#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

namespace extscen {

/// FNV-1a 64-bit running hash. Good enough for cache keys and
/// change detection; not cryptographic.
class Fnv1a64 {
public:
    void update(const void* data, std::size_t len)
    {
        const auto* bytes = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            hash_ ^= bytes[i];
            hash_ *= 0x100000001B3ull;
        }
    }

    void update(const std::string& s)
    {
        update(s.data(), s.size());
        const char sep = '\0';
        update(&sep, 1);
    }

    void update(double v)
    {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof(bits));
        update(&bits, sizeof(bits));
    }

    void update(std::uint64_t v) { update(&v, sizeof(v)); }
    void update(std::int64_t v) { update(&v, sizeof(v)); }
    void update(int v) { update(static_cast<std::int64_t>(v)); }

    [[nodiscard]] std::uint64_t value() const { return hash_; }
    [[nodiscard]] std::string hex() const;

private:
    std::uint64_t hash_ = 0xCBF29CE484222325ull;
};

/// Content hash over labels and the raw double bit patterns of a scenario
/// list. Bit-identical data yields identical hashes regardless of where the
/// data came from.
std::uint64_t hash_scenarios(const std::vector<Scenario>& scenarios);

/// Hash of a file's bytes; throws std::runtime_error if unreadable.
std::string hash_file_hex(const std::string& path);

} // namespace extscen
