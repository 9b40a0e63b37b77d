#include "pod/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "pod/errors.hpp"

namespace pod {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const std::uint64_t v = std::stoull(s, &pos);
        if (pos != s.size()) throw ParseError("");
        return v;
    } catch (...) {
        throw ParseError("bad unsigned value for " + what + ": '" + s + "'");
    }
}

double parse_f64(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw ParseError("");
        return v;
    } catch (...) {
        throw ParseError("bad numeric value for " + what + ": '" + s + "'");
    }
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(std::istream& in) {
    ExperimentConfig cfg;
    bool have_start = false, have_stop = false;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ParseError("config: expected key=value, got '" + t + "'");
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));
        if (key == "code") cfg.code = val;
        else if (key == "aut") cfg.aut_file = val;
        else if (key == "base_perm") cfg.base_perm_file = val;
        else if (key == "decoder") cfg.decoders.push_back(val);
        else if (key == "snr_start") { cfg.snr_start = parse_f64(val, key); have_start = true; }
        else if (key == "snr_stop") { cfg.snr_stop = parse_f64(val, key); have_stop = true; }
        else if (key == "snr_step") cfg.snr_step = parse_f64(val, key);
        else if (key == "min_errors") cfg.min_errors = parse_u64(val, key);
        else if (key == "max_trials") cfg.max_trials = parse_u64(val, key);
        else if (key == "seed") cfg.seed = parse_u64(val, key);
        else if (key == "threads") cfg.threads = unsigned(parse_u64(val, key));
        else if (key == "selection") cfg.selection = val;
        else if (key == "combiner") cfg.combiner = val;
        else if (key == "out") cfg.out = val;
        else throw ParseError("config: unknown key '" + key + "'");
    }
    if (cfg.code.empty()) throw ParseError("config: missing code=");
    if (cfg.decoders.empty()) throw ParseError("config: no decoder= lines");
    if (!have_start || !have_stop) throw ParseError("config: missing snr_start= / snr_stop=");
    if (cfg.snr_step <= 0.0) throw ParseError("config: snr_step must be positive");
    if (cfg.snr_stop < cfg.snr_start) throw ParseError("config: empty SNR sweep");
    if (cfg.selection != "sample" && cfg.selection != "enumerate")
        throw ParseError("config: selection must be sample or enumerate");
    if (cfg.combiner != "ml-among-valid" && cfg.combiner != "best-metric")
        throw ParseError("config: combiner must be ml-among-valid or best-metric");
    return cfg;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    return parse(in);
}

DecoderDescriptor DecoderDescriptor::parse(const std::string& text) {
    DecoderDescriptor d;
    d.label = text;
    const std::vector<std::string> p = split(text, ':');
    if (p[0] == "sc" && p.size() == 1) {
        d.kind = Kind::Sc;
    } else if (p[0] == "scl" && p.size() == 2) {
        d.kind = Kind::Scl;
        d.list_size = parse_u64(p[1], "list size");
        if (d.list_size < 1) throw ParseError("decoder: list size must be >= 1");
    } else if (p[0] == "pod" && (p.size() == 3 || p.size() == 4)) {
        d.kind = Kind::Pod;
        d.branches = parse_u64(p[1], "branch count");
        if (d.branches < 1) throw ParseError("decoder: pod needs at least one branch");
        if (p[2] == "sc" && p.size() == 3) {
            d.list_size = 1;
        } else if (p[2] == "scl" && p.size() == 4) {
            d.list_size = parse_u64(p[3], "list size");
            if (d.list_size < 1) throw ParseError("decoder: list size must be >= 1");
        } else {
            throw ParseError("decoder: pod branch decoder must be sc or scl:L");
        }
    } else if (p[0] == "ml" && p.size() == 1) {
        d.kind = Kind::Ml;
    } else if (p[0] == "hd" && p.size() == 2) {
        d.kind = Kind::Hd;
        d.hd_t = parse_u64(p[1], "correctable weight");
    } else {
        throw ParseError("decoder: cannot parse descriptor '" + text + "'");
    }
    return d;
}

CodeSpec resolve_code(const std::string& selector, const std::string& aut_file) {
    if (is_builtin_code(selector)) {
        if (!aut_file.empty())
            throw ParseError("aut= is only valid with a generator matrix file");
        return builtin_code(selector);
    }
    return load_code(selector, aut_file);
}

namespace {

int classify(const std::exception& e, std::ostream& err) {
    err << "error: " << e.what() << '\n';
    if (dynamic_cast<const CapacityError*>(&e)) return 3;
    if (dynamic_cast<const ParseError*>(&e)) return 1;
    return 2;  // validation / verification failures
}

struct PreparedDecoder {
    DecoderDescriptor desc;
    DecoderFactory factory;  // empty for hd
};

}  // namespace

int cmd_simulate(const ExperimentConfig& cfg, std::ostream& err) {
    try {
        // validate everything before any simulation work
        std::vector<DecoderDescriptor> descs;
        for (const std::string& text : cfg.decoders) descs.push_back(DecoderDescriptor::parse(text));
        const CodeSpec code = resolve_code(cfg.code, cfg.aut_file);
        const Permutation base = cfg.base_perm_file.empty()
                                     ? Permutation::identity(code.n)
                                     : Permutation::from_text_file(cfg.base_perm_file);
        const BranchSelection sel = cfg.selection == "enumerate" ? BranchSelection::Enumerate
                                                                 : BranchSelection::Sample;
        const CombinerMode comb = cfg.combiner == "best-metric" ? CombinerMode::BestMetric
                                                                : CombinerMode::MlAmongValid;
        const Bsgs group = Bsgs::schreier_sims(code.n, code.aut_generators);

        std::vector<PreparedDecoder> prepared;
        for (const DecoderDescriptor& d : descs) {
            PreparedDecoder p{d, {}};
            switch (d.kind) {
                case DecoderDescriptor::Kind::Sc:
                case DecoderDescriptor::Kind::Scl: {
                    // single-transform baseline: one branch, best path
                    PodDecoderSettings settings;
                    settings.list_size = d.list_size;
                    auto podcfg = std::make_shared<PodConfig>(
                        build_pod(code, base, group, 1, sel, cfg.seed, settings,
                                  CombinerMode::BestMetric));
                    p.factory = make_pod_factory(std::move(podcfg));
                    break;
                }
                case DecoderDescriptor::Kind::Pod: {
                    PodDecoderSettings settings;
                    settings.list_size = d.list_size;
                    auto podcfg = std::make_shared<PodConfig>(
                        build_pod(code, base, group, d.branches, sel, cfg.seed, settings, comb));
                    p.factory = make_pod_factory(std::move(podcfg));
                    break;
                }
                case DecoderDescriptor::Kind::Ml:
                    p.factory = make_ml_factory(code);
                    break;
                case DecoderDescriptor::Kind::Hd:
                    break;
            }
            prepared.push_back(std::move(p));
        }

        std::vector<ChannelPoint> points;
        const double rate = double(code.k) / double(code.n);
        for (double s = cfg.snr_start; s <= cfg.snr_stop + 1e-9; s += cfg.snr_step)
            points.push_back(ChannelPoint::make(s, rate));

        std::ostringstream csv;
        csv << "code,decoder,ebno_db,trials,block_errors,bler,seconds\n";
        for (const PreparedDecoder& p : prepared) {
            if (p.desc.kind == DecoderDescriptor::Kind::Hd) {
                for (const ChannelPoint& pt : points) {
                    const double bler = hd_theoretical_bler(code.n, code.k, p.desc.hd_t, pt.eb_n0_db);
                    csv << code.name << ',' << p.desc.label << ',' << fmt("%g", pt.eb_n0_db)
                        << ",0,0," << fmt("%.6g", bler) << ",0.000\n";
                }
                continue;
            }
            const std::vector<BlerRecord> recs =
                run_bler(code, p.factory, p.desc.label, points, cfg.min_errors, cfg.max_trials,
                         cfg.seed, cfg.threads);
            for (const BlerRecord& r : recs)
                csv << code.name << ',' << r.decoder << ',' << fmt("%g", r.eb_n0_db) << ','
                    << r.trials << ',' << r.block_errors << ',' << fmt("%.6g", r.bler) << ','
                    << fmt("%.3f", r.seconds) << '\n';
        }

        if (cfg.out.empty()) {
            std::fputs(csv.str().c_str(), stdout);
        } else {
            std::ofstream out(cfg.out, std::ios::binary);
            if (!out) throw ParseError("cannot write output file: " + cfg.out);
            out << csv.str();
        }
        return 0;
    } catch (const std::exception& e) {
        return classify(e, err);
    }
}

int cmd_inspect(const std::string& code_selector, const std::string& perm_file, std::ostream& out,
                std::ostream& err) {
    try {
        const CodeSpec code = resolve_code(code_selector);
        std::size_t n_pad = 1;
        unsigned m = 0;
        while (n_pad < code.n) { n_pad <<= 1; ++m; }
        const PolarSpec spec = PolarSpec::make(m);
        Permutation base = perm_file.empty() ? Permutation::identity(n_pad)
                                             : Permutation::from_text_file(perm_file);
        if (base.size() == code.n && code.n != n_pad) {
            std::vector<std::uint32_t> img(n_pad);
            for (std::size_t i = 0; i < code.n; ++i) img[i] = base(i);
            for (std::size_t i = code.n; i < n_pad; ++i) img[i] = std::uint32_t(i);
            base = Permutation(std::move(img));
        }
        BitMatrix g = code.g;
        if (code.n != n_pad) {
            BitMatrix padded(code.k, n_pad);
            for (std::size_t r = 0; r < code.k; ++r)
                for (std::size_t c = 0; c < code.n; ++c)
                    if (g.get(r, c)) padded.set(r, c, true);
            g = std::move(padded);
        }
        const TransformResult tr = polar_transform(g, base, spec);
        out << "code " << code.name << '\n' << tr.dump();
        return 0;
    } catch (const std::exception& e) {
        return classify(e, err);
    }
}

int cmd_group_info(const std::string& code_selector, std::ostream& out, std::ostream& err) {
    try {
        const CodeSpec code = resolve_code(code_selector);
        if (code.aut_generators.empty())
            throw ValidationError(code.name + ": no automorphism generators");
        for (std::size_t i = 0; i < code.aut_generators.size(); ++i) {
            if (!verify_automorphism(code.g, code.aut_generators[i]))
                throw ValidationError(code.name + ": generator " + std::to_string(i) +
                                      " fails verification");
            out << "generator " << i << " verified\n";
        }
        const Bsgs group = Bsgs::schreier_sims(code.n, code.aut_generators);
        out << "order " << group.order().to_string() << '\n';
        out << "base_length " << group.depth() << '\n';
        return 0;
    } catch (const std::exception& e) {
        return classify(e, err);
    }
}

} // namespace pod
