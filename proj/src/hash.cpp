#include "extscen/hash.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace extscen {

std::string Fnv1a64::hex() const
{
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash_));
    return std::string(buf);
}

std::uint64_t hash_scenarios(const std::vector<Scenario>& scenarios)
{
    Fnv1a64 h;
    h.update(static_cast<std::uint64_t>(scenarios.size()));
    for (const auto& s : scenarios) {
        h.update(s.label);
        h.update(static_cast<std::uint64_t>(s.rg_mw.size()));
        for (const auto& row : s.rg_mw) {
            h.update(static_cast<std::uint64_t>(row.size()));
            for (double v : row) {
                h.update(v);
            }
        }
        h.update(static_cast<std::uint64_t>(s.ld_mw.size()));
        for (const auto& row : s.ld_mw) {
            h.update(static_cast<std::uint64_t>(row.size()));
            for (double v : row) {
                h.update(v);
            }
        }
    }
    return h.value();
}

std::string hash_file_hex(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read file: " + path);
    }
    Fnv1a64 h;
    char buf[65536];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        h.update(buf, static_cast<std::size_t>(in.gcount()));
    }
    return h.hex();
}

} // namespace extscen
