// SPDX-License-Identifier: Apache-2.0
//
// spatcon - spatial consistency evaluation for massive SIMO channels
// Copyright (C) 2026 The spatcon authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "spatcon/classify.hpp"
#include "spatcon/config.hpp"
#include "spatcon/digest.hpp"
#include "spatcon/error.hpp"
#include "spatcon/evalpipe.hpp"
#include "spatcon/parallel.hpp"
#include "spatcon/synth.hpp"
#include "spatcon/traceio.hpp"

namespace spatcon::cli
{
    namespace
    {
        struct SynthOptions
        {
            std::string preset;
            std::optional<std::uint64_t> seed;
            std::string config;
            std::optional<std::size_t> lttl_count;
            std::string out;
        };

        struct EvalOptions
        {
            std::string trace;
            std::string out_curve;
            std::string track_id;
            std::size_t tau = 0;
        };

        struct ClassifyOptions
        {
            std::vector<std::string> curves;
            std::string thresholds;
            std::string out_report;
            std::string out_json;
        };

        struct ReportOptions
        {
            std::vector<std::string> curves;
            std::string thresholds;
            std::string group_by = "label";
            std::string out_envelope;
        };

        struct SweepOptions
        {
            std::string param;
            std::vector<std::size_t> values;
            std::string trace;
            std::string preset;
            std::optional<std::uint64_t> seed;
            std::string config;
            std::string track_id;
            std::string out_curve;
        };

        RunConfig load_config(const std::string &path, const std::string &preset, std::optional<std::uint64_t> seed)
        {
            RunConfig cfg = path.empty() ? RunConfig{} : read_config_file(path);
            if (!preset.empty())
            {
                const auto p = parse_preset(preset);
                if (!p)
                    raise(ErrorCode::InvalidConfig, "unknown preset '" + preset + "'");
                cfg.scenario.preset = *p;
            }
            if (seed)
                cfg.scenario.seed = *seed;
            return cfg;
        }

        void print_config(std::ostream &out, const std::string &text)
        {
            out << "# effective configuration (" << tool_version << ", " << "workers=" << worker_count() << ")\n"
                << text;
        }

        std::string default_track_id(const ScenarioDigest &d)
        {
            if (d.preset.empty())
                return "track-" + d.hash.substr(0, 8);
            return d.preset + "-" + std::to_string(d.seed);
        }

        std::string header_digest(const TraceHeader &h)
        {
            return h.effective_config.empty() ? std::string("none") : to_hex(fnv1a(h.effective_config));
        }

        ChannelTrace run_synthesis(const RunConfig &cfg)
        {
            const Scenario scenario = make_scenario(cfg.scenario);
            ChannelTrace trace = synthesize(scenario, cfg.eval);
            trace.header.effective_config = write_config(cfg);
            return trace;
        }

        std::vector<SimilarityCurve> load_curves(const std::vector<std::string> &paths)
        {
            std::vector<SimilarityCurve> curves;
            for (const std::string &path : paths)
            {
                const std::vector<std::uint8_t> bytes = read_file(path);
                auto part = read_curves_csv(std::string_view(reinterpret_cast<const char *>(bytes.data()), bytes.size()));
                curves.insert(curves.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
            }
            std::map<std::string, int> seen;
            for (const SimilarityCurve &c : curves)
                if (++seen[c.track_id] > 1)
                    raise(ErrorCode::InvalidConfig, "track id '" + c.track_id + "' appears in more than one input");
            return curves;
        }

        ClassThresholds load_thresholds(const std::string &path)
        {
            return path.empty() ? ClassThresholds{} : read_config_file(path).thresholds;
        }

        std::string thresholds_text(const ClassThresholds &th)
        {
            RunConfig cfg;
            cfg.thresholds = th;
            const std::string all = write_config(cfg);
            const std::size_t pos = all.find("[thresholds]");
            return pos == std::string::npos ? all : all.substr(pos);
        }

        std::vector<LabeledCurve> label_all(const std::vector<SimilarityCurve> &curves, const ClassThresholds &th)
        {
            std::vector<LabeledCurve> labels(curves.size());
            parallel_for(curves.size(), [&](std::size_t i) {
                labels[i] = {curves[i].track_id, classify_curve(curves[i], th), curves[i].ground_truth};
            });
            return labels;
        }

        int cmd_synth(const SynthOptions &o, std::ostream &out)
        {
            RunConfig cfg = load_config(o.config, o.preset, o.seed);
            if (o.lttl_count)
            {
                cfg.eval.lttl_count = *o.lttl_count;
                cfg.eval.validate();
            }
            print_config(out, write_config(cfg));
            const ChannelTrace trace = run_synthesis(cfg);
            save_trace(trace, o.out);
            const ScenarioDigest &d = trace.header.scenario;
            out << "wrote " << o.out << ": " << trace.header.stts_count << " STTS x " << trace.header.n_subcarriers
                << " subcarriers x " << trace.header.n_r << " antennas, scenario " << d.hash << ", BS range "
                << format_fixed(d.min_bs_range, 2) << ".." << format_fixed(d.max_bs_range, 2) << " m\n";
            return 0;
        }

        int cmd_eval(const EvalOptions &o, std::ostream &out)
        {
            const ChannelTrace trace = load_trace(o.trace);
            print_config(out, trace.header.effective_config.empty() ? std::string("(not recorded in trace)\n")
                                                                     : trace.header.effective_config);
            const std::string id = o.track_id.empty() ? default_track_id(trace.header.scenario) : o.track_id;
            const SimilarityCurve curve = evaluate_trace(trace, id, o.tau);
            write_text_file(o.out_curve, write_curves_csv({curve}, {header_digest(trace.header)}));
            out << "wrote " << o.out_curve << ": " << curve.size() << " LTTS, span " << format_fixed(curve.span(), 2)
                << " m\n";
            return 0;
        }

        int cmd_classify(const ClassifyOptions &o, std::ostream &out)
        {
            const ClassThresholds th = load_thresholds(o.thresholds);
            print_config(out, thresholds_text(th));
            const std::vector<SimilarityCurve> curves = load_curves(o.curves);
            const std::vector<LabeledCurve> labels = label_all(curves, th);
            const ClassificationReport report = classification_report(labels);
            RunConfig cfg;
            cfg.thresholds = th;
            const CsvProvenance prov{config_digest(cfg)};
            write_text_file(o.out_report, write_report_csv(labels, report, prov));
            if (!o.out_json.empty())
                write_text_file(o.out_json, write_report_json(labels, report, prov));
            out << "classified " << report.total() << " curves";
            if (report.with_truth > 0)
                out << ", accuracy " << report.correct << '/' << report.with_truth << " = "
                    << format_fixed(report.accuracy(), 4);
            out << '\n';
            return 0;
        }

        int cmd_report(const ReportOptions &o, std::ostream &out)
        {
            if (o.group_by != "label" && o.group_by != "truth")
                raise(ErrorCode::InvalidConfig, "--group-by must be 'label' or 'truth'");
            const ClassThresholds th = load_thresholds(o.thresholds);
            print_config(out, thresholds_text(th) + "group_by = " + o.group_by + "\n");
            const std::vector<SimilarityCurve> curves = load_curves(o.curves);

            std::map<std::string, std::vector<SimilarityCurve>> groups;
            if (o.group_by == "truth")
            {
                for (const SimilarityCurve &c : curves)
                {
                    if (!c.ground_truth)
                        raise(ErrorCode::InvalidConfig, "curve '" + c.track_id + "' has no ground truth");
                    groups[*c.ground_truth].push_back(c);
                }
            }
            else
            {
                const std::vector<LabeledCurve> labels = label_all(curves, th);
                for (std::size_t i = 0; i < curves.size(); ++i)
                    groups[std::string(to_string(labels[i].label.label))].push_back(curves[i]);
            }

            std::vector<ClassEnvelope> envelopes;
            std::vector<std::vector<SimilarityCurve>> members;
            for (auto &[name, group] : groups)
            {
                std::vector<SimilarityCurve> cut = truncate_to_shortest(std::move(group));
                envelopes.push_back(class_envelope(cut, extremal_representatives(cut), name));
                members.push_back(std::move(cut));
                out << "envelope " << name << ": " << members.back().size() << " curves, "
                    << envelopes.back().distances.size() << " LTTS\n";
            }
            RunConfig cfg;
            cfg.thresholds = th;
            write_text_file(o.out_envelope, write_envelopes_csv(envelopes, members, {config_digest(cfg)}));
            return 0;
        }

        int cmd_sweep(const SweepOptions &o, std::ostream &out)
        {
            if (o.param != "tau" && o.param != "n_subcarriers")
                raise(ErrorCode::InvalidConfig, "--param must be 'tau' or 'n_subcarriers'");
            if (o.values.empty())
                raise(ErrorCode::InvalidConfig, "--values needs at least one entry");

            std::vector<SimilarityCurve> curves;
            std::string digest;
            if (!o.trace.empty())
            {
                if (!o.preset.empty() || o.seed || !o.config.empty())
                    raise(ErrorCode::InvalidConfig, "--trace excludes --preset, --seed and --config");
                if (o.param != "tau")
                    raise(ErrorCode::InvalidConfig,
                          "a recorded trace supports only tau sweeps; resynthesize to vary n_subcarriers");
                const ChannelTrace trace = load_trace(o.trace);
                print_config(out, trace.header.effective_config.empty() ? std::string("(not recorded in trace)\n")
                                                                         : trace.header.effective_config);
                digest = header_digest(trace.header);
                const std::string base = o.track_id.empty() ? default_track_id(trace.header.scenario) : o.track_id;
                for (const std::size_t v : o.values)
                {
                    curves.push_back(evaluate_trace(trace, base + "/tau=" + std::to_string(v), v));
                    out << "tau=" << v << ": " << curves.back().size() << " LTTS\n";
                }
            }
            else
            {
                const RunConfig base_cfg = load_config(o.config, o.preset, o.seed);
                print_config(out, write_config(base_cfg));
                digest = config_digest(base_cfg);
                const Scenario scenario = make_scenario(base_cfg.scenario);
                const std::string base =
                    o.track_id.empty() ? default_track_id(spatcon::digest(scenario)) : o.track_id;
                for (const std::size_t v : o.values)
                {
                    RunConfig cfg = base_cfg;
                    (o.param == "tau" ? cfg.eval.tau : cfg.eval.n_subcarriers) = v;
                    cfg.eval.validate();
                    ChannelTrace trace = synthesize(scenario, cfg.eval);
                    curves.push_back(evaluate_trace(trace, base + "/" + o.param + "=" + std::to_string(v)));
                    out << o.param << '=' << v << ": " << curves.back().size() << " LTTS\n";
                }
            }
            write_text_file(o.out_curve, write_curves_csv(curves, {digest}));
            out << "wrote " << o.out_curve << ": " << curves.size() << " curves\n";
            return 0;
        }
    }

    int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"spatial consistency evaluation for massive SIMO channels", "spatcon"};
        app.set_version_flag("--version", std::string(tool_version));
        app.require_subcommand(1);

        SynthOptions so;
        auto *synth = app.add_subcommand("synth", "synthesize a channel trace from a preset");
        synth->add_option("--preset", so.preset, "los_radial | los_tangential | far_away | nlos_uncorrelated");
        synth->add_option("--seed", so.seed, "scenario seed");
        synth->add_option("--config", so.config, "INI configuration file")->check(CLI::ExistingFile);
        synth->add_option("--lttl-count", so.lttl_count, "number of LTTS (overrides the configuration)");
        synth->add_option("--out", so.out, "output trace file")->required();

        EvalOptions eo;
        auto *eval = app.add_subcommand("eval", "compute the CMD similarity curve of a trace");
        eval->add_option("--trace", eo.trace, "input trace file")->required();
        eval->add_option("--out-curve", eo.out_curve, "output curve CSV")->required();
        eval->add_option("--track-id", eo.track_id, "track id written to the CSV");
        eval->add_option("--tau", eo.tau, "STTS per window, at most the trace's own (0 = trace value)");

        ClassifyOptions co;
        auto *classify = app.add_subcommand("classify", "label similarity curves with the class rules");
        classify->add_option("--curves", co.curves, "curve CSV files")->required()->expected(1, -1);
        classify->add_option("--thresholds", co.thresholds, "INI file with a [thresholds] section");
        classify->add_option("--out-report", co.out_report, "output report CSV")->required();
        classify->add_option("--out-json", co.out_json, "optional report JSON");

        ReportOptions ro;
        auto *report = app.add_subcommand("report", "build per-class min/max envelopes");
        report->add_option("--curves", ro.curves, "curve CSV files")->required()->expected(1, -1);
        report->add_option("--thresholds", ro.thresholds, "INI file with a [thresholds] section");
        report->add_option("--group-by", ro.group_by, "label (classifier output) or truth (generating preset)");
        report->add_option("--out-envelope", ro.out_envelope, "output envelope CSV")->required();

        SweepOptions wo;
        auto *sweep = app.add_subcommand("sweep", "re-run eval over a list of parameter values");
        sweep->add_option("--param", wo.param, "tau | n_subcarriers")->required();
        sweep->add_option("--values", wo.values, "comma separated values")->required()->delimiter(',');
        sweep->add_option("--trace", wo.trace, "evaluate a recorded trace");
        sweep->add_option("--preset", wo.preset, "resynthesize from a preset");
        sweep->add_option("--seed", wo.seed, "scenario seed");
        sweep->add_option("--config", wo.config, "INI configuration file")->check(CLI::ExistingFile);
        sweep->add_option("--track-id", wo.track_id, "base track id");
        sweep->add_option("--out-curve", wo.out_curve, "output curve CSV")->required();

        std::vector<const char *> argv;
        for (const std::string &a : args)
            argv.push_back(a.c_str());
        try
        {
            app.parse(static_cast<int>(argv.size()), argv.data());
        }
        catch (const CLI::ParseError &e)
        {
            return app.exit(e, out, err);
        }

        try
        {
            if (*synth)
                return cmd_synth(so, out);
            if (*eval)
                return cmd_eval(eo, out);
            if (*classify)
                return cmd_classify(co, out);
            if (*report)
                return cmd_report(ro, out);
            return cmd_sweep(wo, out);
        }
        catch (const Error &e)
        {
            err << "spatcon: " << e.what() << '\n';
            return exit_code(e.code());
        }
        catch (const std::exception &e)
        {
            err << "spatcon: " << e.what() << '\n';
            return 1;
        }
    }
}
