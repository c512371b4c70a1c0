#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "chaostream/errors.hpp"
#include "chaostream/voice.hpp"

namespace chaostream {

namespace detail {

inline std::uint32_t read_u32le(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) |
           (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) |
           (static_cast<std::uint32_t>(p[3]) << 24);
}

inline std::uint16_t read_u16le(const std::uint8_t* p) {
    return static_cast<std::uint16_t>(p[0] |
                                      (static_cast<std::uint16_t>(p[1]) << 8));
}

inline void put_u32le(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xFF));
}

inline void put_u16le(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
}

}  // namespace detail

// Reads a RIFF/WAVE file. Supported content is PCM (format code 1), mono,
// 16-bit; anything else raises FormatError naming the offending field.
// Chunks other than fmt/data are skipped.
inline VoiceSignal read_wav(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open WAV file: " + path);
    std::vector<std::uint8_t> file((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());

    if (file.size() < 12 || file[0] != 'R' || file[1] != 'I' ||
        file[2] != 'F' || file[3] != 'F')
        throw FormatError("WAV: missing RIFF header: " + path);
    if (file[8] != 'W' || file[9] != 'A' || file[10] != 'V' || file[11] != 'E')
        throw FormatError("WAV: missing WAVE id: " + path);

    bool have_fmt = false;
    std::uint16_t format_code = 0, channels = 0, bits_per_sample = 0;
    std::uint32_t sample_rate = 0;
    bool have_data = false;
    std::size_t data_off = 0, data_len = 0;

    std::size_t pos = 12;
    while (pos + 8 <= file.size()) {
        const std::uint32_t chunk_size = detail::read_u32le(&file[pos + 4]);
        const std::size_t body = pos + 8;
        if (body + chunk_size > file.size())
            throw FormatError("WAV: truncated chunk: " + path);
        const bool is_fmt = file[pos] == 'f' && file[pos + 1] == 'm' &&
                            file[pos + 2] == 't' && file[pos + 3] == ' ';
        const bool is_data = file[pos] == 'd' && file[pos + 1] == 'a' &&
                             file[pos + 2] == 't' && file[pos + 3] == 'a';
        if (is_fmt) {
            if (chunk_size < 16)
                throw FormatError("WAV: fmt chunk too small: " + path);
            format_code = detail::read_u16le(&file[body]);
            channels = detail::read_u16le(&file[body + 2]);
            sample_rate = detail::read_u32le(&file[body + 4]);
            bits_per_sample = detail::read_u16le(&file[body + 14]);
            have_fmt = true;
        } else if (is_data) {
            data_off = body;
            data_len = chunk_size;
            have_data = true;
        }
        // chunks are word-aligned; odd sizes carry a pad byte
        pos = body + chunk_size + (chunk_size & 1);
    }

    if (!have_fmt) throw FormatError("WAV: missing fmt chunk: " + path);
    if (!have_data) throw FormatError("WAV: missing data chunk: " + path);
    if (format_code != 1)
        throw FormatError("WAV: unsupported format code " +
                          std::to_string(format_code) + " (PCM required): " +
                          path);
    if (channels != 1)
        throw FormatError("WAV: unsupported channels " +
                          std::to_string(channels) + " (mono required): " +
                          path);
    if (bits_per_sample != 16)
        throw FormatError("WAV: unsupported bit depth " +
                          std::to_string(bits_per_sample) +
                          " (16 required): " + path);
    if (sample_rate == 0) throw FormatError("WAV: zero sample rate: " + path);
    if (data_len % 2 != 0)
        throw FormatError("WAV: odd data size for 16-bit samples: " + path);

    VoiceSignal sig;
    sig.sample_rate = sample_rate;
    sig.samples.reserve(data_len / 2);
    for (std::size_t i = 0; i < data_len; i += 2) {
        const std::uint16_t u = detail::read_u16le(&file[data_off + i]);
        sig.samples.push_back(static_cast<std::int16_t>(u));
    }
    return sig;
}

// Writes a canonical 44-byte-header PCM WAV (mono, 16-bit).
inline void write_wav(const std::string& path, const VoiceSignal& sig) {
    if (sig.sample_rate == 0) throw ParamError("write_wav: zero sample rate");
    const std::uint32_t data_len =
        static_cast<std::uint32_t>(2 * sig.samples.size());
    std::vector<std::uint8_t> out;
    out.reserve(44 + data_len);
    const char* riff = "RIFF";
    const char* wave = "WAVE";
    const char* fmt = "fmt ";
    const char* data = "data";
    out.insert(out.end(), riff, riff + 4);
    detail::put_u32le(out, 36 + data_len);
    out.insert(out.end(), wave, wave + 4);
    out.insert(out.end(), fmt, fmt + 4);
    detail::put_u32le(out, 16);                      // fmt payload size
    detail::put_u16le(out, 1);                       // PCM
    detail::put_u16le(out, 1);                       // mono
    detail::put_u32le(out, sig.sample_rate);
    detail::put_u32le(out, sig.sample_rate * 2);     // byte rate
    detail::put_u16le(out, 2);                       // block align
    detail::put_u16le(out, 16);                      // bits per sample
    out.insert(out.end(), data, data + 4);
    detail::put_u32le(out, data_len);
    for (std::int16_t s : sig.samples)
        detail::put_u16le(out, static_cast<std::uint16_t>(s));

    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open for writing: " + path);
    os.write(reinterpret_cast<const char*>(out.data()),
             static_cast<std::streamsize>(out.size()));
    if (!os) throw IoError("write failed: " + path);
}

}  // namespace chaostream
