#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "chaostream/errors.hpp"

namespace chaostream {

// Ordered bit sequence packed eight bits per byte, first bit in the least
// significant position. The trailing partial byte is zero-padded; the true
// bit length travels with the object (and in file headers).
class BitStream {
public:
    BitStream() = default;
    explicit BitStream(std::size_t nbits)
        : bytes_((nbits + 7) / 8, 0), nbits_(nbits) {}

    std::size_t size() const { return nbits_; }
    bool empty() const { return nbits_ == 0; }

    int bit(std::size_t i) const { return (bytes_[i >> 3] >> (i & 7)) & 1; }

    void set_bit(std::size_t i, int value) {
        const std::uint8_t mask = static_cast<std::uint8_t>(1u << (i & 7));
        if (value)
            bytes_[i >> 3] |= mask;
        else
            bytes_[i >> 3] &= static_cast<std::uint8_t>(~mask);
    }

    void push_back(int value) {
        if ((nbits_ & 7) == 0) bytes_.push_back(0);
        if (value)
            bytes_.back() |= static_cast<std::uint8_t>(1u << (nbits_ & 7));
        ++nbits_;
    }

    void reserve(std::size_t nbits) { bytes_.reserve((nbits + 7) / 8); }

    BitStream prefix(std::size_t nbits) const {
        if (nbits > nbits_)
            throw LengthError("BitStream::prefix: prefix longer than stream");
        BitStream out;
        out.nbits_ = nbits;
        out.bytes_.assign(bytes_.begin(),
                          bytes_.begin() + static_cast<std::ptrdiff_t>((nbits + 7) / 8));
        out.mask_tail();
        return out;
    }

    std::size_t count_ones() const {
        // padding bits are kept zero, so whole-byte popcounts are exact
        std::size_t n = 0;
        for (std::uint8_t b : bytes_)
            n += static_cast<std::size_t>(std::popcount(b));
        return n;
    }

    const std::vector<std::uint8_t>& bytes() const { return bytes_; }

    static BitStream from_bytes(std::vector<std::uint8_t> bytes,
                                std::size_t nbits) {
        if (bytes.size() != (nbits + 7) / 8)
            throw LengthError("BitStream::from_bytes: byte count mismatch");
        BitStream out;
        out.bytes_ = std::move(bytes);
        out.nbits_ = nbits;
        out.mask_tail();
        return out;
    }

    friend bool operator==(const BitStream& a, const BitStream& b) {
        return a.nbits_ == b.nbits_ && a.bytes_ == b.bytes_;
    }

    // Packed file layout: 8-byte little-endian bit count, then the packed
    // bytes.
    void save_packed(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot open for writing: " + path);
        std::uint8_t header[8];
        std::uint64_t n = nbits_;
        for (int i = 0; i < 8; ++i)
            header[i] = static_cast<std::uint8_t>((n >> (8 * i)) & 0xFF);
        out.write(reinterpret_cast<const char*>(header), 8);
        if (!bytes_.empty())
            out.write(reinterpret_cast<const char*>(bytes_.data()),
                      static_cast<std::streamsize>(bytes_.size()));
        if (!out) throw IoError("write failed: " + path);
    }

    static BitStream load_packed(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoError("cannot open for reading: " + path);
        std::uint8_t header[8];
        in.read(reinterpret_cast<char*>(header), 8);
        if (in.gcount() != 8)
            throw FormatError("packed bitstream: truncated header: " + path);
        std::uint64_t n = 0;
        for (int i = 0; i < 8; ++i)
            n |= static_cast<std::uint64_t>(header[i]) << (8 * i);
        // check the declared payload against the file before allocating
        const auto payload_start = in.tellg();
        in.seekg(0, std::ios::end);
        const std::uint64_t available =
            static_cast<std::uint64_t>(in.tellg() - payload_start);
        const std::uint64_t needed = n / 8 + (n % 8 != 0);
        if (available < needed)
            throw FormatError("packed bitstream: truncated payload: " + path);
        in.seekg(payload_start);
        BitStream out;
        out.nbits_ = static_cast<std::size_t>(n);
        out.bytes_.resize(static_cast<std::size_t>(needed));
        if (!out.bytes_.empty()) {
            in.read(reinterpret_cast<char*>(out.bytes_.data()),
                    static_cast<std::streamsize>(out.bytes_.size()));
            if (static_cast<std::size_t>(in.gcount()) != out.bytes_.size())
                throw FormatError("packed bitstream: truncated payload: " +
                                  path);
        }
        out.mask_tail();
        return out;
    }

    // ASCII layout: '0'/'1' characters, no separators; a single trailing
    // newline is tolerated on read.
    void save_ascii(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot open for writing: " + path);
        std::string line;
        line.reserve(nbits_ + 1);
        for (std::size_t i = 0; i < nbits_; ++i)
            line.push_back(bit(i) ? '1' : '0');
        line.push_back('\n');
        out.write(line.data(), static_cast<std::streamsize>(line.size()));
        if (!out) throw IoError("write failed: " + path);
    }

    static BitStream load_ascii(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoError("cannot open for reading: " + path);
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        if (text.ends_with("\r\n"))
            text.resize(text.size() - 2);
        else if (text.ends_with("\n"))
            text.resize(text.size() - 1);
        BitStream out;
        out.reserve(text.size());
        for (char ch : text) {
            if (ch != '0' && ch != '1')
                throw FormatError("ascii bitstream: unexpected character '" +
                                  std::string(1, ch) + "' in " + path);
            out.push_back(ch - '0');
        }
        return out;
    }

private:
    void mask_tail() {
        if (nbits_ & 7)
            bytes_.back() &=
                static_cast<std::uint8_t>((1u << (nbits_ & 7)) - 1u);
    }

    std::vector<std::uint8_t> bytes_;
    std::size_t nbits_ = 0;
};

}  // namespace chaostream
