/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/

// Command-line front end: synthesize captures, analyze them, sweep sketch
// geometry, and print the resource-cost table.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dnscpm/dnscpm.hpp"

namespace {

dnscpm::IpAddr parse_ip_arg(const std::string& text) {
    return dnscpm::IpAddr::parse(text);
}

struct AnalyzeArgs {
    std::string pcap;
    std::string resolver = "192.0.2.53";
    std::string labels;
    std::string out_verdicts;
    std::string out_metrics;
    std::string emit_pcap;
    std::uint64_t intended = 0;
    dnscpm::EngineConfig engine;
};

struct GenerateArgs {
    std::string scenario = "s";
    std::string out;
    std::string labels;
    std::string domains;
    std::string attack_domain_text;
    dnscpm::ScenarioSpec spec;
};

struct SweepArgs {
    std::string scenario = "interleaved";
    std::string out;
    std::string domains;
    dnscpm::SweepConfig cfg;
};

struct CostArgs {
    std::string out;
};

void fill_noise_domains(dnscpm::ScenarioSpec& spec, const std::string& domains_path) {
    if (!domains_path.empty()) {
        spec.noise_domains = dnscpm::load_domain_list(domains_path);
        return;
    }
    std::size_t need = std::max<std::size_t>(spec.noise_count, 3);
    spec.noise_domains = dnscpm::synth_domains(need, spec.seed);
}

int run_analyze(const AnalyzeArgs& a) {
    dnscpm::IpAddr resolver = parse_ip_arg(a.resolver);
    dnscpm::ReadResult rd = dnscpm::read_capture(a.pcap, resolver);

    std::vector<dnscpm::Label> labels;
    bool have_labels = !a.labels.empty();
    if (have_labels) labels = dnscpm::read_labels_csv(a.labels);

    dnscpm::EngineConfig cfg = a.engine;
    cfg.resolver_ip = resolver;
    cfg.collect_output = !a.emit_pcap.empty();
    dnscpm::ProcessResult res =
        dnscpm::process(cfg, rd.packets, have_labels ? &labels : nullptr, a.intended,
                        rd.malformed);

    if (!a.out_verdicts.empty())
        dnscpm::write_verdicts_csv(a.out_verdicts, rd.packets, res.verdicts);
    if (!a.out_metrics.empty()) dnscpm::write_metrics_json(a.out_metrics, res.metrics);
    if (!a.emit_pcap.empty()) dnscpm::write_capture(a.emit_pcap, res.output);

    std::cout << dnscpm::metrics_to_json(res.metrics).dump(2) << '\n';
    return 0;
}

int run_generate(GenerateArgs& g) {
    g.spec.kind = dnscpm::parse_scenario(g.scenario);
    if (!g.attack_domain_text.empty())
        g.spec.attack_domain = dnscpm::DomainName::parse(g.attack_domain_text);
    bool needs_pool = g.spec.kind == dnscpm::ScenarioKind::Interleaved ||
                      g.spec.kind == dnscpm::ScenarioKind::BenignOnly ||
                      g.spec.kind == dnscpm::ScenarioKind::OobAttack;
    if (needs_pool) fill_noise_domains(g.spec, g.domains);

    dnscpm::GeneratedTraffic traffic = dnscpm::generate(g.spec);
    dnscpm::write_capture(g.out, traffic.frames);
    if (!g.labels.empty()) dnscpm::write_labels_csv(g.labels, traffic.labels);

    std::cout << "wrote " << traffic.frames.size() << " frames (" << traffic.stream.size()
              << " admissible responses, " << traffic.intended_attack_total
              << " attack packets) to " << g.out << '\n';
    return 0;
}

int run_sweep(SweepArgs& s) {
    s.cfg.scenario.kind = dnscpm::parse_scenario(s.scenario);
    s.cfg.scenario.seed = s.cfg.base_seed;
    bool needs_pool = s.cfg.scenario.kind == dnscpm::ScenarioKind::Interleaved ||
                      s.cfg.scenario.kind == dnscpm::ScenarioKind::BenignOnly ||
                      s.cfg.scenario.kind == dnscpm::ScenarioKind::OobAttack;
    if (needs_pool) fill_noise_domains(s.cfg.scenario, s.domains);

    std::vector<dnscpm::SweepCell> cells = dnscpm::run_sweep(s.cfg);
    if (!s.out.empty()) dnscpm::write_sweep_csv(s.out, cells);

    std::cout << "w,d,repeats,fp_rate,asr\n";
    for (const dnscpm::SweepCell& c : cells)
        std::cout << c.width << ',' << c.depth << ',' << c.repeats << ','
                  << dnscpm::format_double(c.mean_fp) << ','
                  << dnscpm::format_double(c.mean_asr) << '\n';
    return 0;
}

int run_costmodel(const CostArgs& c) {
    std::vector<dnscpm::CostReport> rows = dnscpm::cost_model_table();
    if (!c.out.empty()) dnscpm::write_cost_csv(c.out, rows);

    std::cout << "method,N,memory,error,inference\n";
    for (const dnscpm::CostReport& r : rows)
        std::cout << dnscpm::sketch_method_name(r.method) << ',' << r.domains << ','
                  << r.memory_text << ',' << dnscpm::format_double(r.error) << ','
                  << dnscpm::format_double(r.inference) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"DNS cache-poisoning detection toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a key=value file");

    AnalyzeArgs an;
    CLI::App* analyze = app.add_subcommand("analyze", "Run detection over a capture file");
    analyze->add_option("--pcap", an.pcap, "Capture file to analyze")->required();
    analyze->add_option("--resolver", an.resolver, "Resolver IP the capture watches");
    analyze->add_option("--labels", an.labels, "Ground-truth labels CSV");
    analyze->add_option("--intended", an.intended,
                        "Attack packets the adversary sent (success-rate denominator)");
    analyze->add_option("--tau", an.engine.tau, "Per-window repeat threshold");
    analyze->add_option("--interval", an.engine.check_interval, "Check every Nth packet");
    analyze->add_option("--window", an.engine.window_seconds, "Window length in seconds");
    analyze->add_option("--cms-d", an.engine.cms_depth, "Sketch depth (rows)");
    analyze->add_option("--cms-w", an.engine.cms_width, "Sketch width (cells per row)");
    analyze->add_option("--seed", an.engine.seed, "Sketch hash seed")
        ->envname("DNS_CPM_SEED");
    analyze->add_option("--out-verdicts", an.out_verdicts, "Per-packet verdicts CSV path");
    analyze->add_option("--out-metrics", an.out_metrics, "Run metrics JSON path");
    analyze->add_option("--emit-pcap", an.emit_pcap, "Write the mitigated output stream here");

    GenerateArgs gen;
    CLI::App* generate = app.add_subcommand("generate", "Synthesize a labeled capture");
    generate->add_option("--scenario", gen.scenario,
                         "One of: s, frag, oob, benign, interleaved");
    generate->add_option("--seed", gen.spec.seed, "Generator seed")->envname("DNS_CPM_SEED");
    generate->add_option("--out", gen.out, "Capture file to write")->required();
    generate->add_option("--labels", gen.labels, "Labels CSV to write");
    generate->add_option("--attack-count", gen.spec.attack_count,
                         "Spoofed responses / forged fragments to send");
    generate->add_option("--noise-count", gen.spec.noise_count, "Benign responses to mix in");
    generate->add_option("--domains", gen.domains,
                         "Ranked-domain file for benign names (synthesized when absent)");
    generate->add_option("--rate-ms", gen.spec.attack_window_ms,
                         "Burst window in milliseconds");
    generate->add_option("--benign-pps", gen.spec.benign_rate_pps,
                         "Benign arrival rate (benign scenario)");
    generate->add_option("--attack-domain", gen.attack_domain_text,
                         "Domain under attack");

    SweepArgs sw;
    CLI::App* sweep = app.add_subcommand("sweep", "Sweep sketch geometry over a scenario");
    sweep->add_option("--scenario", sw.scenario, "One of: s, frag, oob, benign, interleaved");
    sweep->add_option("--seed", sw.cfg.base_seed, "Base seed; run r uses seed base+r")
        ->envname("DNS_CPM_SEED");
    sweep->add_option("--repeats", sw.cfg.repeats, "Traffic instances per cell");
    sweep->add_option("--w-grid", sw.cfg.widths, "Sketch widths to try")->delimiter(',');
    sweep->add_option("--d-grid", sw.cfg.depths, "Sketch depths to try")->delimiter(',');
    sweep->add_option("--tau", sw.cfg.engine.tau, "Per-window repeat threshold");
    sweep->add_option("--interval", sw.cfg.engine.check_interval, "Check every Nth packet");
    sweep->add_option("--window", sw.cfg.engine.window_seconds, "Window length in seconds");
    sweep->add_option("--attack-count", sw.cfg.scenario.attack_count,
                      "Spoofed responses per traffic instance");
    sweep->add_option("--noise-count", sw.cfg.scenario.noise_count,
                      "Benign responses per traffic instance");
    sweep->add_option("--benign-pps", sw.cfg.scenario.benign_rate_pps,
                      "Benign arrival rate (benign scenario)");
    sweep->add_option("--rate-ms", sw.cfg.scenario.attack_window_ms,
                      "Burst window in milliseconds");
    sweep->add_option("--domains", sw.domains, "Ranked-domain file for benign names");
    sweep->add_option("--out", sw.out, "Result CSV path");

    CostArgs cost;
    CLI::App* costmodel =
        app.add_subcommand("costmodel", "Print the sketch resource-cost table");
    costmodel->add_option("--out", cost.out, "Cost table CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(analyze)) return run_analyze(an);
        if (app.got_subcommand(generate)) return run_generate(gen);
        if (app.got_subcommand(sweep)) return run_sweep(sw);
        if (app.got_subcommand(costmodel)) return run_costmodel(cost);
    } catch (const dnscpm::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
