#ifndef OOVR_BYTES_HPP
#define OOVR_BYTES_HPP

#include <cstdint>
#include <iosfwd>
#include <istream>
#include <ostream>
#include <string>

#include "oovr/errors.hpp"

// Little-endian binary primitives shared by the index file formats.
// Counts are fixed-width LE integers, strings are u32-length-prefixed bytes.

namespace oovr {

inline void put_u32(std::ostream &out, std::uint32_t v) {
    char b[4];
    b[0] = static_cast<char>(v & 0xff);
    b[1] = static_cast<char>((v >> 8) & 0xff);
    b[2] = static_cast<char>((v >> 16) & 0xff);
    b[3] = static_cast<char>((v >> 24) & 0xff);
    out.write(b, 4);
}

inline void put_u64(std::ostream &out, std::uint64_t v) {
    put_u32(out, static_cast<std::uint32_t>(v & 0xffffffffu));
    put_u32(out, static_cast<std::uint32_t>(v >> 32));
}

inline void put_f64(std::ostream &out, double v) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    __builtin_memcpy(&bits, &v, sizeof(bits));
    put_u64(out, bits);
}

inline void put_str(std::ostream &out, const std::string &s) {
    put_u32(out, static_cast<std::uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

inline std::uint32_t get_u32(std::istream &in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char *>(b), 4);
    if (!in)
        throw DataError("unexpected end of binary file");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

inline std::uint64_t get_u64(std::istream &in) {
    std::uint64_t lo = get_u32(in);
    std::uint64_t hi = get_u32(in);
    return lo | (hi << 32);
}

inline double get_f64(std::istream &in) {
    std::uint64_t bits = get_u64(in);
    double v;
    __builtin_memcpy(&v, &bits, sizeof(v));
    return v;
}

inline std::string get_str(std::istream &in) {
    std::uint32_t n = get_u32(in);
    std::string s(n, '\0');
    in.read(s.data(), static_cast<std::streamsize>(n));
    if (!in)
        throw DataError("unexpected end of binary file");
    return s;
}

} // namespace oovr

#endif
