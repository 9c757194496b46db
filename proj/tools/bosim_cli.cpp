/**
 * Copyright 2026 bosim contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 * Batch front-end of the bosim toolkit. Every subcommand maps onto one
 * library operation, reads a JSON configuration, and persists its artifacts
 * (CSV tables, JSON-lines sample logs, a JSON run manifest) into --out.
 * Identical configuration and seed reproduce identical artifact bytes; the
 * manifest additionally records the measured wall time.
 */

#include <CLI11.hpp>

#include "bosim/bosim.hpp"

#include <chrono>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

namespace {

using namespace bosim;
using Clock = std::chrono::steady_clock;

/** @brief Required-field lookup with a message naming the enclosing object. */
const Json& field(const Json& obj, const std::string& key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw Error("config: \"" + where + "\" needs a \"" + key + "\" field");
    return *it;
}

/** @brief Collects artifact files in one output directory, in write order. */
class ArtifactSink {
  public:
    explicit ArtifactSink(const std::string& dir) : dir_(dir) {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
    }

    void write(const std::string& name, const std::string& content) {
        const std::string path = (std::filesystem::path(dir_) / name).string();
        write_text_file(path, content);
        std::printf("wrote %s\n", path.c_str());
        names_.push_back(name);
    }

    /** @brief Finalizes the run by writing manifest.json (always the last artifact). */
    void finish(const std::string& command, const Json& config, std::uint64_t seed,
                Clock::time_point t0) {
        RunManifest man;
        man.command = command;
        man.config = config;
        man.config_hash = config_hash(config);
        man.seed = seed;
        man.version = kVersion;
        man.wall_time_ms =
            std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        man.artifacts = names_;
        write("manifest.json", manifest_to_json(man).dump(2) + "\n");
    }

  private:
    std::string dir_;
    std::vector<std::string> names_;
};

/** @brief A parsed configuration plus the seed resolved from flag > manifest > config. */
struct LoadedConfig {
    Json config;
    bool has_seed = false;
    std::uint64_t seed = 0;
};

/**
@brief Reads a configuration file. A run manifest (recognized by its
manifest_schema_version field) yields its embedded configuration and recorded
seed, so re-running from a manifest reproduces the original run.
*/
LoadedConfig load_config(const std::string& path, bool seed_given, std::uint64_t seed_flag) {
    LoadedConfig lc;
    const std::string text = read_text_file(path);
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error("config file " + path + " is not valid JSON: " + std::string(e.what()));
    }
    if (j.is_object() && j.contains("manifest_schema_version")) {
        RunManifest man = manifest_from_json(j);
        lc.config = man.config;
        lc.has_seed = true;
        lc.seed = man.seed;
    } else {
        require(j.is_object(), "config file " + path + " must hold a JSON object");
        auto sv = j.find("schema_version");
        require(sv != j.end() && sv->is_number_integer() && sv->get<int>() == 1,
                "config file " + path + " must declare \"schema_version\": 1");
        lc.config = j;
    }
    if (!lc.has_seed && lc.config.contains("samples")) {
        const Json& s = lc.config["samples"];
        if (s.is_object() && s.contains("seed")) {
            lc.seed = s["seed"].get<std::uint64_t>();
            lc.has_seed = true;
        }
    }
    if (seed_given) {
        lc.seed = seed_flag;
        lc.has_seed = true;
    }
    return lc;
}

std::uint64_t require_seed(const LoadedConfig& lc, const std::string& command) {
    require(lc.has_seed, "subcommand '" + command +
                             "' draws random samples and needs a seed: pass --seed or set "
                             "samples.seed in the config");
    return lc.seed;
}

/** @brief Builds the interferometer from config.circuit (haar | waveguide | file). */
Interferometer build_circuit(const Json& cfg) {
    const Json& c = field(cfg, "circuit", "config");
    const std::string kind = c.value("kind", std::string());
    Interferometer interf;
    if (kind == "haar") {
        const std::size_t m = field(c, "m", "circuit").get<std::size_t>();
        const std::uint64_t seed = field(c, "seed", "circuit").get<std::uint64_t>();
        interf.unitary = haar_random_unitary(m, seed);
    } else if (kind == "waveguide") {
        const auto couplings = field(c, "couplings", "circuit").get<std::vector<double>>();
        const auto propagation = field(c, "propagation", "circuit").get<std::vector<double>>();
        const double length = field(c, "length", "circuit").get<double>();
        interf.unitary = coupled_waveguide_unitary(couplings, propagation, length);
    } else if (kind == "file") {
        const std::string path = field(c, "path", "circuit").get<std::string>();
        const std::string text = read_text_file(path);  // names the path when missing
        Json j;
        try {
            j = Json::parse(text);
        } catch (const Json::parse_error& e) {
            throw Error("circuit file " + path + " is not valid JSON: " +
                        std::string(e.what()));
        }
        return interferometer_from_json(j);
    } else {
        throw Error("circuit.kind must be haar, waveguide, or file (got '" + kind + "')");
    }
    if (c.contains("input_modes")) {
        interf.input_modes = c["input_modes"].get<std::vector<std::size_t>>();
    } else {
        for (std::size_t i = 0; i < interf.unitary.rows(); ++i)
            interf.input_modes.push_back(i);
    }
    interf.validate();
    return interf;
}

PatternDomain parse_domain(const Json& cfg, std::size_t m) {
    const Json& d = field(cfg, "domain", "config");
    const std::string kind = field(d, "kind", "domain").get<std::string>();
    const int n = field(d, "n", "domain").get<int>();
    if (kind == "fixed_total") return PatternDomain::fixed_total(m, n);
    if (kind == "truncated_total") return PatternDomain::truncated_total(m, n);
    if (kind == "collision_free") return PatternDomain::collision_free(m, n);
    if (kind == "max_occupancy_2") return PatternDomain::max_occupancy_2(m, n);
    throw Error("domain.kind must be fixed_total, truncated_total, collision_free, or "
                "max_occupancy_2 (got '" + kind + "')");
}

/** @brief Refuses configurations beyond the enumeration or kernel-size caps. */
void guard_sizes(const PatternDomain& dom, SampleRecord::Protocol protocol, int photons) {
    const double n_pat = count_patterns(dom);
    if (n_pat > static_cast<double>(kMaxDomainSize))
        throw Error("domain " + dom.tag() + " enumerates " +
                    std::to_string(static_cast<long long>(n_pat)) + " patterns, above the " +
                    std::to_string(kMaxDomainSize) +
                    " enumeration cap; reduce domain.n or the mode count");
    if (protocol == SampleRecord::Protocol::Gbs) {
        if (dom.n > kHafnianCap)
            throw Error("a photon cutoff of " + std::to_string(dom.n) +
                        " needs hafnians above the " + std::to_string(kHafnianCap) +
                        "-photon cap; reduce domain.n");
    } else {
        if (photons > kPermanentCap)
            throw Error("an input of " + std::to_string(photons) +
                        " photons needs permanents above the " +
                        std::to_string(kPermanentCap) + "-photon cap; reduce the input occupations");
    }
}

/** @brief Distinguishable-photon law: permanent of the elementwise |T|^2 submatrix. */
double distinguishable_prob(const ComplexMatrix& t, const FockPattern& input,
                            const FockPattern& output) {
    ComplexMatrix sub = repeat_submatrix(t, input, output);
    ComplexMatrix sq(sub.rows(), sub.cols());
    for (std::size_t r = 0; r < sub.rows(); ++r)
        for (std::size_t c = 0; c < sub.cols(); ++c) sq(r, c) = std::norm(sub(r, c));
    return permanent(sq).real() / (input.factorial_product() * output.factorial_product());
}

/** @brief Everything derived from one experiment configuration. */
struct Pipeline {
    SampleRecord::Protocol protocol = SampleRecord::Protocol::Standard;
    Interferometer interf;
    PatternDomain dom{PatternDomain::Kind::FixedTotal, 1, 1};
    FockPattern input;       // Fock-input protocols: occupation per input mode
    ComplexMatrix transfer;  // Fock-input protocols: rows = input modes
    SqueezerBank full_bank;  // Gaussian protocol: one entry per device mode
    SqueezerBank src_bank;   // Gaussian protocol: one entry per input mode
    GaussianState state;     // Gaussian protocol
    double loss_eta = 1.0;
    Distribution dist;  // ideal law conditioned on the domain
};

Pipeline build_pipeline(const Json& cfg) {
    Pipeline p;
    p.protocol = protocol_from_name(field(cfg, "protocol", "config").get<std::string>());
    p.interf = build_circuit(cfg);
    const std::size_t m = p.interf.m();
    p.dom = parse_domain(cfg, m);

    if (p.protocol == SampleRecord::Protocol::Gbs) {
        const auto xi = field(cfg, "xi", "config").get<std::vector<double>>();
        require(xi.size() == p.interf.input_modes.size(),
                "config: \"xi\" must list one squeezing parameter per input mode");
        p.src_bank = SqueezerBank(xi);
        std::vector<double> full(m, 0.0);
        for (std::size_t i = 0; i < xi.size(); ++i) full[p.interf.input_modes[i]] = xi[i];
        p.full_bank = SqueezerBank(full);
        p.loss_eta = cfg.value("loss_eta", 1.0);
        guard_sizes(p.dom, p.protocol, p.dom.n);
        p.state = (p.loss_eta == 1.0)
                      ? build_sigma_q(p.interf, p.full_bank)
                      : apply_uniform_loss(p.full_bank, p.interf, LossChannel(p.loss_eta));
        p.dist = build_distribution(gbs_law(p.state, p.dom.n), p.dom, /*normalize=*/true);
    } else {
        require(!cfg.contains("loss_eta"),
                "config: loss_eta is only modeled for the gbs protocol");
        const auto occ = field(cfg, "input", "config").get<std::vector<int>>();
        p.input = FockPattern(occ);
        require(p.input.modes() == p.interf.input_modes.size(),
                "config: \"input\" must list one occupation per input mode");
        require(p.dom.kind != PatternDomain::Kind::TruncatedTotal,
                "config: Fock-input protocols conserve photon number; use a fixed_total, "
                "collision_free, or max_occupancy_2 domain");
        require(p.dom.n == p.input.total(),
                "config: domain.n must equal the total input photon number");
        guard_sizes(p.dom, p.protocol, p.input.total());
        p.transfer = transfer_matrix(p.interf);
        const ComplexMatrix t = p.transfer;
        const FockPattern in = p.input;
        p.dist = build_distribution(
            [t, in](const FockPattern& k) { return prob_boson_sampling(t, in, k); }, p.dom,
            /*normalize=*/true);
    }
    return p;
}

std::vector<SampleRecord> make_records(const Pipeline& p,
                                       const std::vector<FockPattern>& draws) {
    std::vector<SampleRecord> recs;
    recs.reserve(draws.size());
    for (std::size_t i = 0; i < draws.size(); ++i) {
        SampleRecord r;
        r.protocol = p.protocol;
        if (p.protocol != SampleRecord::Protocol::Gbs) r.herald = p.input;
        r.output = draws[i];
        r.index = i;
        r.validate();
        recs.push_back(std::move(r));
    }
    return recs;
}

/** @brief Per-sample likelihood backed by a table over the enumerated domain. */
std::function<double(const SampleRecord&)> table_lookup(const Distribution& dist) {
    auto table = std::make_shared<std::map<std::vector<int>, double>>();
    for (std::size_t i = 0; i < dist.patterns.size(); ++i)
        (*table)[dist.patterns[i].occupations()] = dist.probs[i];
    return [table](const SampleRecord& s) {
        auto it = table->find(s.output.occupations());
        require(it != table->end(),
                "validation: sample pattern lies outside the configured domain");
        return it->second;
    };
}

/** @brief Builds a named alternative model, conditioned on the pipeline's domain. */
LikelihoodModel alternative_model(const Pipeline& p, const std::string& name) {
    const PatternDomain dom = p.dom;
    const Interferometer interf = p.interf;
    const std::size_t m = interf.m();
    const bool gaussian = p.protocol == SampleRecord::Protocol::Gbs;
    std::function<double(const FockPattern&)> law;

    if (name == "uniform") {
        law = [dom](const FockPattern&) { return prob_uniform(dom); };
    } else if (name == "distinguishable") {
        require(!gaussian, "the distinguishable-photon model needs a Fock-input protocol");
        const ComplexMatrix t = p.transfer;
        const FockPattern in = p.input;
        law = [t, in](const FockPattern& k) { return distinguishable_prob(t, in, k); };
    } else if (name == "thermal") {
        require(gaussian, "the thermal model is an alternative to the gbs protocol");
        const double nbar = p.full_bank.mean_photons() / static_cast<double>(m);
        const auto spec = ClassicalModelSpec::thermal(std::vector<double>(m, nbar));
        law = [spec, interf](const FockPattern& k) { return prob_thermal(spec, interf, k); };
    } else if (name == "coherent") {
        require(gaussian, "the coherent model is an alternative to the gbs protocol");
        const double amp = std::sqrt(p.full_bank.mean_photons() / static_cast<double>(m));
        const auto spec = ClassicalModelSpec::coherent(
            std::vector<Complex>(m, Complex(amp, 0.0)));
        law = [spec, interf](const FockPattern& k) { return prob_coherent(spec, interf, k); };
    } else if (name == "distinguishable_sms") {
        require(gaussian,
                "the distinguishable-squeezer model is an alternative to the gbs protocol");
        require(dom.kind == PatternDomain::Kind::MaxOccupancy2 && dom.n == 4,
                "the distinguishable-squeezer model is a four-photon law; set domain to "
                "{\"kind\": \"max_occupancy_2\", \"n\": 4}");
        const SqueezerBank bank = p.src_bank;
        law = [bank, interf](const FockPattern& k) {
            return prob_distinguishable_sms(bank, interf, k);
        };
    } else if (name == "tms") {
        require(gaussian, "the two-mode-squeezer model is an alternative to the gbs protocol");
        const SqueezerBank bank = p.src_bank;
        const ComplexMatrix t = transfer_matrix(interf);
        law = [bank, t](const FockPattern& k) { return prob_tms(bank, t, k); };
    } else {
        throw Error("unknown validation model '" + name +
                    "' (expected uniform, distinguishable, thermal, coherent, "
                    "distinguishable_sms, tms, rownorm, lrt)");
    }
    Distribution d = build_distribution(law, dom, /*normalize=*/true);
    return {name, table_lookup(d)};
}

/** @brief Runs the configured validation battery, one verdict CSV per model. */
void run_validation(const Pipeline& p, const Json& vcfg,
                    const std::vector<SampleRecord>& samples, ArtifactSink& sink) {
    const auto names = field(vcfg, "models", "validation").get<std::vector<std::string>>();
    require(!names.empty(), "config: validation.models must not be empty");

    LikelihoodModel ideal{"ideal", table_lookup(p.dist)};
    std::vector<LikelihoodModel> bayes_alts;
    for (const std::string& name : names) {
        if (name == "rownorm") {
            require(p.protocol != SampleRecord::Protocol::Gbs,
                    "the row-norm counter needs a Fock-input protocol");
            ValidationVerdict v =
                rownorm_test(samples, p.transfer, p.interf.m(), p.input.total());
            sink.write("verdict_rownorm.csv", verdict_to_csv(v));
        } else if (name == "lrt") {
            require(p.protocol != SampleRecord::Protocol::Gbs,
                    "the likelihood-ratio counter needs a Fock-input protocol");
            const double a1 = vcfg.value("lrt_a1", 0.75);
            const double a2 = vcfg.value("lrt_a2", 2.0);
            ValidationVerdict v = likelihood_ratio_test(samples, p.transfer, a1, a2);
            sink.write("verdict_lrt.csv", verdict_to_csv(v));
        } else {
            LikelihoodModel alt = alternative_model(p, name);
            ValidationVerdict v = bayesian_compare(samples, ideal, alt);
            sink.write("verdict_" + name + ".csv", verdict_to_csv(v));
            bayes_alts.push_back(std::move(alt));
        }
    }
    if (vcfg.value("multi", false)) {
        require(!bayes_alts.empty(),
                "config: validation.multi needs at least one Bayesian alternative model");
        ValidationVerdict v = bayesian_compare_multi(samples, ideal, bayes_alts);
        sink.write("verdict_multi.csv", verdict_to_csv(v));
    }
}

/** @brief Shared --config/--seed/--out state of one subcommand. */
struct CommonFlags {
    std::string config;
    std::string out = ".";
    std::uint64_t seed = 0;
    CLI::Option* seed_opt = nullptr;

    LoadedConfig load() const { return load_config(config, seed_opt->count() > 0, seed); }
};

CommonFlags* add_common(CLI::App* cmd, std::deque<CommonFlags>& store) {
    store.emplace_back();
    CommonFlags* f = &store.back();
    cmd->add_option("--config", f->config,
                    "JSON experiment configuration (or a run manifest to reproduce)")
        ->required();
    f->seed_opt = cmd->add_option("--seed", f->seed, "Sampling seed (overrides the config)");
    cmd->add_option("--out", f->out, "Artifact output directory (default: current)");
    return f;
}

void do_prob(const CommonFlags& flags) {
    const auto t0 = Clock::now();
    LoadedConfig lc = flags.load();
    Pipeline p = build_pipeline(lc.config);
    ArtifactSink sink(flags.out);
    sink.write("distribution.csv", distribution_to_csv(p.dist));
    sink.finish("prob", lc.config, lc.has_seed ? lc.seed : 0, t0);
}

void do_sample(const CommonFlags& flags) {
    const auto t0 = Clock::now();
    LoadedConfig lc = flags.load();
    const std::uint64_t seed = require_seed(lc, "sample");
    const Json& scfg = field(lc.config, "samples", "config");
    const std::size_t count = field(scfg, "count", "samples").get<std::size_t>();
    Pipeline p = build_pipeline(lc.config);
    auto draws = sample(p.dist, seed, count);
    ArtifactSink sink(flags.out);
    sink.write("samples.jsonl", sample_records_to_jsonl(make_records(p, draws)));
    sink.finish("sample", lc.config, seed, t0);
}

void do_validate(const CommonFlags& flags, const std::string& samples_path) {
    const auto t0 = Clock::now();
    LoadedConfig lc = flags.load();
    Pipeline p = build_pipeline(lc.config);
    const Json& vcfg = field(lc.config, "validation", "config");

    std::vector<SampleRecord> samples;
    std::uint64_t seed = lc.has_seed ? lc.seed : 0;
    ArtifactSink sink(flags.out);
    if (!samples_path.empty()) {
        samples = sample_records_from_jsonl(read_text_file(samples_path));
        for (const SampleRecord& s : samples)
            require(s.protocol == p.protocol,
                    "sample file " + samples_path + " holds records of another protocol");
    } else {
        seed = require_seed(lc, "validate");
        const Json& scfg = field(lc.config, "samples", "config");
        const std::size_t count = field(scfg, "count", "samples").get<std::size_t>();
        samples = make_records(p, sample(p.dist, seed, count));
        sink.write("samples.jsonl", sample_records_to_jsonl(samples));
    }
    require(!samples.empty(), "validation needs at least one sample");
    run_validation(p, vcfg, samples, sink);
    sink.finish("validate", lc.config, seed, t0);
}

void do_run(const CommonFlags& flags) {
    const auto t0 = Clock::now();
    LoadedConfig lc = flags.load();
    Pipeline p = build_pipeline(lc.config);
    ArtifactSink sink(flags.out);
    sink.write("distribution.csv", distribution_to_csv(p.dist));

    std::uint64_t seed = lc.has_seed ? lc.seed : 0;
    std::vector<SampleRecord> samples;
    if (lc.config.contains("samples")) {
        seed = require_seed(lc, "run");
        const Json& scfg = lc.config["samples"];
        const std::size_t count = field(scfg, "count", "samples").get<std::size_t>();
        samples = make_records(p, sample(p.dist, seed, count));
        sink.write("samples.jsonl", sample_records_to_jsonl(samples));
    }
    if (lc.config.contains("validation")) {
        require(!samples.empty(), "config: validation needs a samples stage");
        run_validation(p, lc.config["validation"], samples, sink);
    }
    sink.finish("run", lc.config, seed, t0);
}

void do_vibronic(const std::string& molecule_path, const std::string& config_path,
                 bool seed_given_unused, int truncation, bool exact_bins,
                 const std::string& out, bool out_given) {
    (void)seed_given_unused;
    const auto t0 = Clock::now();
    Json cfg;
    if (!config_path.empty()) {
        LoadedConfig lc = load_config(config_path, false, 0);
        cfg = lc.config;
    } else {
        require(!molecule_path.empty(), "vibronic: pass --molecule or --config");
        const std::string text = read_text_file(molecule_path);
        Json mol_json;
        try {
            mol_json = Json::parse(text);
        } catch (const Json::parse_error& e) {
            throw Error("molecule file " + molecule_path + " is not valid JSON: " +
                        std::string(e.what()));
        }
        cfg = Json{{"schema_version", 1},
                   {"molecule", mol_json},
                   {"truncation_n", truncation},
                   {"binning", exact_bins ? "exact" : "auto"}};
    }

    MoleculeSpec mol = molecule_from_json(field(cfg, "molecule", "config"));
    const int trunc = field(cfg, "truncation_n", "config").get<int>();
    const std::string binning = cfg.value("binning", "auto");
    require(binning == "auto" || binning == "exact",
            "config: binning must be auto or exact");
    DoktorovDecomposition dok = doktorov_decompose(mol);
    FcProfile prof = fc_profile(dok, mol.omega_prime, trunc,
                                binning == "exact" ? ProfileBinning::Exact
                                                   : ProfileBinning::Auto);
    std::fputs(profile_to_csv(prof).c_str(), stdout);
    if (out_given) {
        ArtifactSink sink(out);
        sink.write("profile.csv", profile_to_csv(prof));
        sink.finish("vibronic", cfg, 0, t0);
    }
}

RateProtocol parse_rate_protocol(const std::string& name) {
    if (name == "sbs") return RateProtocol::Sbs;
    if (name == "gbs") return RateProtocol::Gbs;
    throw Error("--protocol must be sbs or gbs (got '" + name + "')");
}

void do_rates(const std::string& protocol, int n, const std::string& preset, double r0,
              bool r0_given, const std::string& out, bool out_given) {
    const auto t0 = Clock::now();
    RateParams params = rate_preset(preset);
    if (r0_given) params.r0 = r0;
    const double rate = event_rate(parse_rate_protocol(protocol), n, params);
    std::printf("%s\n", format_double(rate).c_str());
    if (out_given) {
        ArtifactSink sink(out);
        sink.write("rates.csv", rate_table_to_csv({{n, rate}}));
        Json cfg{{"schema_version", 1},
                 {"protocol", protocol},
                 {"n", n},
                 {"preset", preset},
                 {"r0", params.r0}};
        sink.finish("rates", cfg, 0, t0);
    }
}

void do_snr(int pairs, int sources, double xi) {
    std::printf("%s\n", format_double(snr_gbs(pairs, sources, xi)).c_str());
}

void do_losses(const CommonFlags& flags) {
    const auto t0 = Clock::now();
    LoadedConfig lc = flags.load();
    const Json& ls = field(lc.config, "loss_study", "config");
    const int n = field(ls, "n", "loss_study").get<int>();
    const std::size_t m = field(ls, "modes", "loss_study").get<std::size_t>();
    const std::size_t sources = field(ls, "sources", "loss_study").get<std::size_t>();
    const auto xi_grid = field(ls, "xi_grid", "loss_study").get<std::vector<double>>();
    const auto eta_grid = field(ls, "eta_grid", "loss_study").get<std::vector<double>>();
    const int circuits = field(ls, "circuits", "loss_study").get<int>();
    const int extra_pairs = ls.value("extra_pairs", 2);
    std::uint64_t seed = 0;
    if (flags.seed_opt->count() > 0)
        seed = flags.seed;
    else
        seed = field(ls, "seed", "loss_study").get<std::uint64_t>();

    auto rows = loss_fidelity_study(n, m, sources, xi_grid, eta_grid, circuits, seed,
                                    extra_pairs);
    ArtifactSink sink(flags.out);
    sink.write("losses.csv", loss_study_to_csv(rows));
    sink.finish("losses", lc.config, seed, t0);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bosim: boson-sampling simulator and analysis toolkit"};
    app.require_subcommand(1);
    std::deque<CommonFlags> store;

    auto* run_cmd = app.add_subcommand(
        "run", "Full pipeline: distribution, samples, and validation verdicts");
    CommonFlags* run_flags = add_common(run_cmd, store);
    run_cmd->callback([run_flags] { do_run(*run_flags); });

    auto* prob_cmd =
        app.add_subcommand("prob", "Evaluate the configured law over its pattern domain");
    CommonFlags* prob_flags = add_common(prob_cmd, store);
    prob_cmd->callback([prob_flags] { do_prob(*prob_flags); });

    auto* sample_cmd =
        app.add_subcommand("sample", "Draw seeded samples from the configured law");
    CommonFlags* sample_flags = add_common(sample_cmd, store);
    sample_cmd->callback([sample_flags] { do_sample(*sample_flags); });

    auto* validate_cmd = app.add_subcommand(
        "validate", "Score recorded or freshly drawn samples against rival models");
    CommonFlags* validate_flags = add_common(validate_cmd, store);
    static std::string samples_path;
    validate_cmd->add_option("--samples", samples_path,
                             "Existing JSON-lines sample log (drawn fresh when omitted)");
    validate_cmd->callback(
        [validate_flags] { do_validate(*validate_flags, samples_path); });

    auto* vib_cmd = app.add_subcommand(
        "vibronic", "Franck-Condon profile of a molecule specification");
    static std::string molecule_path, vib_config, vib_out = ".";
    static int truncation = 4;
    static bool exact_bins = false;
    vib_cmd->add_option("--molecule", molecule_path, "Molecule JSON file");
    vib_cmd->add_option("--config", vib_config,
                        "Vibronic config or manifest (alternative to --molecule)");
    vib_cmd->add_option("--truncation", truncation, "Total-photon truncation (default 4)");
    vib_cmd->add_flag("--exact-bins", exact_bins,
                      "Cluster exact transition energies instead of auto bin widths");
    auto* vib_out_opt = vib_cmd->add_option("--out", vib_out, "Artifact output directory");
    vib_cmd->callback([vib_out_opt] {
        do_vibronic(molecule_path, vib_config, false, truncation, exact_bins, vib_out,
                    vib_out_opt->count() > 0);
    });

    auto* rates_cmd =
        app.add_subcommand("rates", "n-photon event rate of a hardware preset");
    static std::string rate_protocol, rate_preset_name = "spiral", rates_out = ".";
    static int rate_n = 1;
    static double rate_r0 = 0.0;
    rates_cmd->add_option("--protocol", rate_protocol, "sbs | gbs")->required();
    rates_cmd->add_option("--n", rate_n, "Detected signal photon number")->required();
    rates_cmd->add_option("--preset", rate_preset_name,
                          "spiral | spiral-integrated | ring | ring-integrated");
    auto* r0_opt = rates_cmd->add_option("--r0", rate_r0, "Override pump repetition rate (Hz)");
    auto* rates_out_opt = rates_cmd->add_option("--out", rates_out, "Artifact output directory");
    rates_cmd->callback([r0_opt, rates_out_opt] {
        do_rates(rate_protocol, rate_n, rate_preset_name, rate_r0, r0_opt->count() > 0,
                 rates_out, rates_out_opt->count() > 0);
    });

    auto* snr_cmd = app.add_subcommand(
        "snr", "Signal-to-noise ratio of n-pair coincidences from k squeezed sources");
    static int snr_pairs = 1, snr_sources = 1;
    static double snr_xi = 0.1;
    snr_cmd->add_option("--pairs", snr_pairs, "Number of coincident photon pairs")->required();
    snr_cmd->add_option("--sources", snr_sources, "Number of squeezed sources")->required();
    snr_cmd->add_option("--xi", snr_xi, "Squeezing parameter")->required();
    snr_cmd->callback([] { do_snr(snr_pairs, snr_sources, snr_xi); });

    auto* losses_cmd = app.add_subcommand(
        "losses", "Mean fidelity of lossy photon-number sectors over a (xi, eta) grid");
    CommonFlags* losses_flags = add_common(losses_cmd, store);
    losses_cmd->callback([losses_flags] { do_losses(*losses_flags); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
