#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pod/channel.hpp"
#include "pod/codes.hpp"

namespace pod {

// Flat key=value experiment description; one decoder= line per curve.
struct ExperimentConfig {
    std::string code;            // builtin name or generator matrix file
    std::string aut_file;        // optional generator-set file
    std::string base_perm_file;  // optional base permutation (identity otherwise)
    std::vector<std::string> decoders;
    double snr_start = 0.0, snr_stop = 0.0, snr_step = 1.0;
    std::uint64_t min_errors = 100;
    std::uint64_t max_trials = 10000000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::string selection = "sample";        // sample | enumerate
    std::string combiner = "ml-among-valid"; // ml-among-valid | best-metric
    std::string out;                          // CSV path; empty = stdout

    static ExperimentConfig parse(std::istream& in);
    static ExperimentConfig parse_file(const std::string& path);
};

// Parsed decoder descriptor: sc | scl:L | pod:M:sc | pod:M:scl:L | ml | hd:t.
struct DecoderDescriptor {
    enum class Kind { Sc, Scl, Pod, Ml, Hd } kind = Kind::Sc;
    std::size_t branches = 1;   // pod
    std::size_t list_size = 1;  // scl / pod branch decoder
    std::size_t hd_t = 0;
    std::string label;

    static DecoderDescriptor parse(const std::string& text);
};

CodeSpec resolve_code(const std::string& selector, const std::string& aut_file = "");

// Exit codes shared with the CLI: 0 ok, 1 config, 2 verification, 3 capacity.
int cmd_simulate(const ExperimentConfig& cfg, std::ostream& err);
int cmd_inspect(const std::string& code_selector, const std::string& perm_file,
                std::ostream& out, std::ostream& err);
int cmd_group_info(const std::string& code_selector, std::ostream& out, std::ostream& err);

} // namespace pod
