#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

#include "chaostream/bitstream.hpp"
#include "chaostream/errors.hpp"
#include "chaostream/key.hpp"
#include "chaostream/keystream.hpp"

namespace chaostream {

// 16-bit signed mono PCM.
struct VoiceSignal {
    std::vector<std::int16_t> samples;
    std::uint32_t sample_rate = 16000;

    friend bool operator==(const VoiceSignal&, const VoiceSignal&) = default;
};

// Encrypted payload plus the metadata needed to rebuild a playable signal.
struct CipherText {
    BitStream payload;
    std::size_t sample_count = 0;
    std::uint32_t sample_rate = 16000;
};

// Each sample reinterpreted as unsigned 16-bit two's complement, emitted
// least significant bit first.
inline BitStream samples_to_bits(const VoiceSignal& sig) {
    BitStream out;
    out.reserve(16 * sig.samples.size());
    for (std::int16_t s : sig.samples) {
        const auto u = static_cast<std::uint16_t>(s);
        for (int i = 0; i < 16; ++i) out.push_back((u >> i) & 1);
    }
    return out;
}

inline VoiceSignal bits_to_samples(const BitStream& bits,
                                   std::uint32_t sample_rate) {
    if (bits.size() % 16 != 0)
        throw FormatError("bits_to_samples: bit count not a multiple of 16");
    VoiceSignal sig;
    sig.sample_rate = sample_rate;
    sig.samples.reserve(bits.size() / 16);
    for (std::size_t off = 0; off < bits.size(); off += 16) {
        std::uint16_t u = 0;
        for (int i = 0; i < 16; ++i)
            u |= static_cast<std::uint16_t>(bits.bit(off + i) << i);
        sig.samples.push_back(static_cast<std::int16_t>(u));
    }
    return sig;
}

// Elementwise XOR over data's length; the keystream may be longer.
inline BitStream xor_bits(const BitStream& data, const BitStream& keystream) {
    if (keystream.size() < data.size())
        throw LengthError("xor_bits: keystream shorter than data");
    const auto& a = data.bytes();
    const auto& b = keystream.bytes();
    std::vector<std::uint8_t> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = static_cast<std::uint8_t>(a[i] ^ b[i]);
    return BitStream::from_bytes(std::move(out), data.size());
}

inline CipherText encrypt(const SecretKey& key, const VoiceSignal& sig,
                          double step = 1e-3) {
    const BitStream data = samples_to_bits(sig);
    const BitStream ks = generate(key, data.size(), step);
    return {xor_bits(data, ks), sig.samples.size(), sig.sample_rate};
}

inline VoiceSignal decrypt(const SecretKey& key, const CipherText& ct,
                           double step = 1e-3) {
    if (ct.payload.size() != 16 * ct.sample_count)
        throw FormatError(
            "decrypt: payload length does not match sample count");
    const BitStream ks = generate(key, ct.payload.size(), step);
    return bits_to_samples(xor_bits(ct.payload, ks), ct.sample_rate);
}

}  // namespace chaostream
