#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "chaostream/chaostream.hpp"

namespace {

using namespace chaostream;

void print_key_warnings(const SecretKey& key) {
    for (const auto& w : regime_warnings(key))
        std::cerr << "chaostream: warning: " << w << "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << text;
    if (!out) throw IoError("write failed: " + path);
}

bool json_report_path(const std::string& path) {
    return path.ends_with(".json");
}

void write_report(const std::string& path, const AnalysisReport& rep) {
    write_text_file(path, json_report_path(path) ? report_json(rep)
                                                 : report_text(rep));
}

struct KeystreamArgs {
    std::string key_path, out_path;
    std::uint64_t bits = 0;
    std::string format = "packed";
};

struct CryptArgs {
    std::string key_path, in_path, out_path;
};

struct AnalyzeArgs {
    std::string in_path, report_path;
    std::string format = "packed";
    double alpha = 0.01;
};

struct SensitivityArgs {
    std::string key_path, in_path, report_path;
    double delta = 0.0;
};

struct KeyspaceArgs {
    std::string key_path;
    int precision = 10;
};

int run_keystream(const KeystreamArgs& args) {
    const KeyFile kf = load_key_file(args.key_path);
    print_key_warnings(kf.key);
    const BitStream bits =
        generate(kf.key, static_cast<std::size_t>(args.bits), kf.step);
    if (args.format == "ascii")
        bits.save_ascii(args.out_path);
    else
        bits.save_packed(args.out_path);
    return 0;
}

int run_encrypt(const CryptArgs& args) {
    const KeyFile kf = load_key_file(args.key_path);
    print_key_warnings(kf.key);
    const VoiceSignal sig = read_wav(args.in_path);
    const CipherText ct = encrypt(kf.key, sig, kf.step);
    // ciphertext travels as a playable WAV: payload bits become the samples
    write_wav(args.out_path, bits_to_samples(ct.payload, ct.sample_rate));
    return 0;
}

int run_decrypt(const CryptArgs& args) {
    const KeyFile kf = load_key_file(args.key_path);
    print_key_warnings(kf.key);
    const VoiceSignal wrapped = read_wav(args.in_path);
    const CipherText ct{samples_to_bits(wrapped), wrapped.samples.size(),
                        wrapped.sample_rate};
    write_wav(args.out_path, decrypt(kf.key, ct, kf.step));
    return 0;
}

int run_analyze(const AnalyzeArgs& args) {
    if (!(args.alpha > 0.0 && args.alpha < 1.0))
        throw ParamError("analyze: alpha must lie in (0, 1)");
    const BitStream bits = args.format == "ascii"
                               ? BitStream::load_ascii(args.in_path)
                               : BitStream::load_packed(args.in_path);
    const AnalysisReport rep = analyze_bits(bits, args.alpha);
    write_report(args.report_path, rep);

    std::size_t ran = 0, passed = 0;
    for (const auto& t : rep.tests)
        if (t.implemented && t.run) {
            ++ran;
            if (t.passed) ++passed;
        }
    std::cout << "report written to " << args.report_path
              << (json_report_path(args.report_path) ? " (json)\n"
                                                     : " (text)\n");
    std::cout << "implemented tests passed: " << passed << "/" << ran
              << " (alpha = " << args.alpha << ")\n";
    if (!std::isnan(rep.max_offpeak_autocorr))
        std::cout << "max off-peak autocorrelation (lags 1.."
                  << rep.autocorr_max_lag
                  << "): " << rep.max_offpeak_autocorr << "\n";
    // a non-random verdict is a result, not an error
    return 0;
}

int run_sensitivity(const SensitivityArgs& args) {
    const KeyFile kf = load_key_file(args.key_path);
    print_key_warnings(kf.key);
    const VoiceSignal sig = read_wav(args.in_path);

    AnalysisReport rep;
    rep.sensitivity_delta = args.delta;
    rep.sensitivity_rows = sensitivity_sweep(kf.key, sig, args.delta, kf.step);
    write_report(args.report_path, rep);

    double min_perturbed = 100.0;
    double control = 0.0;
    for (const auto& row : rep.sensitivity_rows) {
        if (row.parameter == "control")
            control = row.percent_difference;
        else
            min_perturbed = std::min(min_perturbed, row.percent_difference);
    }
    std::cout << "report written to " << args.report_path
              << (json_report_path(args.report_path) ? " (json)\n"
                                                     : " (text)\n");
    std::cout << "perturbed rows: " << rep.sensitivity_rows.size() - 1
              << ", minimum % difference: " << min_perturbed
              << ", control: " << control << "\n";
    return 0;
}

int run_keyspace(const KeyspaceArgs& args) {
    const KeyFile kf = load_key_file(args.key_path);
    const double bits = key_space_bits(args.precision, kf.key.t);
    std::cout << "key space bits: " << std::setprecision(16) << bits << "\n";
    std::cout << "key space: ~= 2^" << std::fixed << std::setprecision(1)
              << bits << "  (t = " << kf.key.t
              << ", 12 real components at 1e-" << args.precision
              << " resolution)\n";
    if (args.precision == 10 && kf.key.t == 4000)
        std::cout << "nominal figure for these defaults: ~= 2^408\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "chaostream: chaos-based keystream generation, voice encryption and "
        "statistical analysis"};
    app.require_subcommand(1);

    KeystreamArgs ks_args;
    auto* ks = app.add_subcommand("keystream", "generate keystream bits");
    ks->add_option("--key", ks_args.key_path, "key file")->required();
    ks->add_option("--bits", ks_args.bits, "number of bits to generate")
        ->required();
    ks->add_option("--out", ks_args.out_path, "output file")->required();
    ks->add_option("--format", ks_args.format, "output format")
        ->check(CLI::IsMember({"packed", "ascii"}));

    CryptArgs enc_args;
    auto* enc = app.add_subcommand("encrypt", "encrypt a 16-bit mono WAV");
    enc->add_option("--key", enc_args.key_path, "key file")->required();
    enc->add_option("--in", enc_args.in_path, "input WAV")->required();
    enc->add_option("--out", enc_args.out_path, "output WAV")->required();

    CryptArgs dec_args;
    auto* dec = app.add_subcommand("decrypt", "decrypt a 16-bit mono WAV");
    dec->add_option("--key", dec_args.key_path, "key file")->required();
    dec->add_option("--in", dec_args.in_path, "input WAV")->required();
    dec->add_option("--out", dec_args.out_path, "output WAV")->required();

    AnalyzeArgs an_args;
    auto* an = app.add_subcommand(
        "analyze", "run the randomness battery on a bitstream file");
    an->add_option("--in", an_args.in_path, "input bitstream file")
        ->required();
    an->add_option("--format", an_args.format, "input format")
        ->check(CLI::IsMember({"packed", "ascii"}));
    an->add_option("--alpha", an_args.alpha, "significance level");
    an->add_option("--report", an_args.report_path,
                   "report file (.json for machine-readable)")
        ->required();

    SensitivityArgs se_args;
    auto* se = app.add_subcommand("sensitivity",
                                  "key-sensitivity sweep on a WAV signal");
    se->add_option("--key", se_args.key_path, "key file")->required();
    se->add_option("--in", se_args.in_path, "input WAV")->required();
    se->add_option("--delta", se_args.delta, "perturbation magnitude")
        ->required();
    se->add_option("--report", se_args.report_path,
                   "report file (.json for machine-readable)")
        ->required();

    KeyspaceArgs sp_args;
    auto* sp = app.add_subcommand("keyspace", "print the key-space size");
    sp->add_option("--key", sp_args.key_path, "key file")->required();
    sp->add_option("--precision", sp_args.precision,
                   "decimal precision exponent");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (ks->parsed()) return run_keystream(ks_args);
        if (enc->parsed()) return run_encrypt(enc_args);
        if (dec->parsed()) return run_decrypt(dec_args);
        if (an->parsed()) return run_analyze(an_args);
        if (se->parsed()) return run_sensitivity(se_args);
        if (sp->parsed()) return run_keyspace(sp_args);
    } catch (const chaostream::IntegrationDiverged& e) {
        std::cerr << "chaostream: error: " << e.what() << "\n";
        return 3;
    } catch (const chaostream::ParamError& e) {
        std::cerr << "chaostream: error: " << e.what() << "\n";
        return 1;
    } catch (const chaostream::Error& e) {
        std::cerr << "chaostream: error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "chaostream: error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
