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

#include "spatcon/traceio.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "spatcon/digest.hpp"
#include "spatcon/error.hpp"

namespace spatcon
{
    using nlohmann::json;

    namespace
    {
        constexpr std::size_t preamble_size = 12;

        void put_u32(std::vector<std::uint8_t> &out, std::uint32_t v)
        {
            for (int i = 0; i < 4; ++i)
                out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
        }

        void put_u64(std::uint8_t *dst, std::uint64_t v)
        {
            for (int i = 0; i < 8; ++i)
                dst[i] = static_cast<std::uint8_t>(v >> (8 * i));
        }

        std::uint32_t get_u32(const std::uint8_t *p)
        {
            std::uint32_t v = 0;
            for (int i = 3; i >= 0; --i)
                v = (v << 8) | p[i];
            return v;
        }

        std::uint64_t get_u64(const std::uint8_t *p)
        {
            std::uint64_t v = 0;
            for (int i = 7; i >= 0; --i)
                v = (v << 8) | p[i];
            return v;
        }

        std::vector<std::uint8_t> preamble(std::string_view magic, const std::string &header)
        {
            std::vector<std::uint8_t> out(magic.begin(), magic.end());
            put_u32(out, trace_format_version);
            put_u32(out, static_cast<std::uint32_t>(header.size()));
            out.insert(out.end(), header.begin(), header.end());
            return out;
        }

        // Returns the header JSON and the payload offset.
        std::pair<json, std::size_t> parse_preamble(std::span<const std::uint8_t> bytes, std::string_view magic)
        {
            if (bytes.size() < 4 || std::memcmp(bytes.data(), magic.data(), 4) != 0)
                raise(ErrorCode::BadMagic, "expected magic '" + std::string(magic) + "'");
            if (bytes.size() < preamble_size)
                raise(ErrorCode::TruncatedPayload, "file ends inside the preamble");
            const std::uint32_t version = get_u32(bytes.data() + 4);
            if (version != trace_format_version)
                raise(ErrorCode::UnsupportedVersion, "format version " + std::to_string(version) + " is not supported");
            const std::uint32_t header_len = get_u32(bytes.data() + 8);
            if (bytes.size() < preamble_size + header_len)
                raise(ErrorCode::TruncatedPayload, "file ends inside the header");
            json header;
            try
            {
                header = json::parse(bytes.begin() + preamble_size, bytes.begin() + preamble_size + header_len);
            }
            catch (const json::exception &e)
            {
                raise(ErrorCode::HeaderInconsistent, std::string("header is not valid JSON: ") + e.what());
            }
            return {std::move(header), preamble_size + header_len};
        }

        json optional_json(const std::optional<double> &v) { return v ? json(*v) : json(nullptr); }

        json digest_json(const ScenarioDigest &d)
        {
            return json{{"hash", d.hash},
                        {"preset", d.preset},
                        {"seed", d.seed},
                        {"los_present", d.los_present},
                        {"k_factor_db", d.k_factor_db},
                        {"n_scatterers", d.n_scatterers},
                        {"bs_height_m", d.bs_height},
                        {"min_bs_range_m", d.min_bs_range},
                        {"max_bs_range_m", d.max_bs_range},
                        {"array_radius_m", d.array_radius},
                        {"row_spacing_m", d.row_spacing},
                        {"n_columns", d.n_columns},
                        {"n_rows", d.n_rows},
                        {"n_polarizations", d.n_polarizations},
                        {"xpol_leakage_db", d.xpol_leakage_db},
                        {"hpbw_azimuth_deg", d.hpbw_azimuth_deg},
                        {"hpbw_elevation_deg", d.hpbw_elevation_deg},
                        {"front_to_back_floor", d.front_to_back_floor},
                        {"amplitude_scale", d.amplitude_scale},
                        {"snr_db", optional_json(d.snr_db)},
                        {"azimuth_convention", d.azimuth_convention}};
        }

        ScenarioDigest digest_from_json(const json &j)
        {
            ScenarioDigest d;
            d.hash = j.at("hash").get<std::string>();
            d.preset = j.at("preset").get<std::string>();
            d.seed = j.at("seed").get<std::uint64_t>();
            d.los_present = j.at("los_present").get<bool>();
            d.k_factor_db = j.at("k_factor_db").get<double>();
            d.n_scatterers = j.at("n_scatterers").get<std::size_t>();
            d.bs_height = j.at("bs_height_m").get<double>();
            d.min_bs_range = j.at("min_bs_range_m").get<double>();
            d.max_bs_range = j.at("max_bs_range_m").get<double>();
            d.array_radius = j.at("array_radius_m").get<double>();
            d.row_spacing = j.at("row_spacing_m").get<double>();
            d.n_columns = j.at("n_columns").get<std::size_t>();
            d.n_rows = j.at("n_rows").get<std::size_t>();
            d.n_polarizations = j.at("n_polarizations").get<std::size_t>();
            d.xpol_leakage_db = j.at("xpol_leakage_db").get<double>();
            d.hpbw_azimuth_deg = j.at("hpbw_azimuth_deg").get<double>();
            d.hpbw_elevation_deg = j.at("hpbw_elevation_deg").get<double>();
            d.front_to_back_floor = j.at("front_to_back_floor").get<double>();
            d.amplitude_scale = j.at("amplitude_scale").get<double>();
            if (!j.at("snr_db").is_null())
                d.snr_db = j.at("snr_db").get<double>();
            d.azimuth_convention = j.at("azimuth_convention").get<std::string>();
            return d;
        }

        json header_json(const TraceHeader &h)
        {
            return json{{"n_r", h.n_r},
                        {"n_subcarriers", h.n_subcarriers},
                        {"stts_count", h.stts_count},
                        {"tau", h.tau},
                        {"lttl_count", h.lttl_count},
                        {"stts_interval_s", h.stts_interval},
                        {"lttl_interval_s", h.lttl_interval},
                        {"carrier_frequency_hz", h.carrier_frequency},
                        {"subcarrier_spacing_hz", h.subcarrier_spacing},
                        {"anchors_m", h.anchors},
                        {"scenario", digest_json(h.scenario)},
                        {"effective_config", h.effective_config},
                        {"tool", h.tool},
                        {"layout", "t-major, subcarrier, antenna; complex float32 (re, im) little-endian"},
                        {"units", {{"distance", "m"}, {"time", "s"}, {"frequency", "Hz"}, {"angle", "rad"}}}};
        }

        TraceHeader header_from_json(const json &j)
        {
            TraceHeader h;
            h.n_r = j.at("n_r").get<std::size_t>();
            h.n_subcarriers = j.at("n_subcarriers").get<std::size_t>();
            h.stts_count = j.at("stts_count").get<std::size_t>();
            h.tau = j.at("tau").get<std::size_t>();
            h.lttl_count = j.at("lttl_count").get<std::size_t>();
            h.stts_interval = j.at("stts_interval_s").get<double>();
            h.lttl_interval = j.at("lttl_interval_s").get<double>();
            h.carrier_frequency = j.at("carrier_frequency_hz").get<double>();
            h.subcarrier_spacing = j.at("subcarrier_spacing_hz").get<double>();
            h.anchors = j.at("anchors_m").get<std::vector<double>>();
            h.scenario = digest_from_json(j.at("scenario"));
            h.effective_config = j.at("effective_config").get<std::string>();
            h.tool = j.at("tool").get<std::string>();
            return h;
        }
    }

    std::vector<std::uint8_t> write_trace(const ChannelTrace &trace)
    {
        trace.header.validate();
        trace.check_dimensions();
        std::vector<std::uint8_t> out = preamble("SCTR", header_json(trace.header).dump());
        const std::size_t offset = out.size();
        out.resize(offset + trace.data.size() * 8);
        std::uint8_t *dst = out.data() + offset;
        for (const cf &v : trace.data)
        {
            const std::uint32_t re = std::bit_cast<std::uint32_t>(v.real());
            const std::uint32_t im = std::bit_cast<std::uint32_t>(v.imag());
            for (int i = 0; i < 4; ++i)
                *dst++ = static_cast<std::uint8_t>(re >> (8 * i));
            for (int i = 0; i < 4; ++i)
                *dst++ = static_cast<std::uint8_t>(im >> (8 * i));
        }
        return out;
    }

    ChannelTrace read_trace(std::span<const std::uint8_t> bytes)
    {
        auto [header, offset] = parse_preamble(bytes, "SCTR");
        ChannelTrace trace;
        try
        {
            trace.header = header_from_json(header);
        }
        catch (const json::exception &e)
        {
            raise(ErrorCode::HeaderInconsistent, std::string("header field error: ") + e.what());
        }
        trace.header.validate();

        const TraceHeader &h = trace.header;
        const std::size_t count = h.stts_count * h.n_subcarriers * h.n_r;
        const std::size_t payload = bytes.size() - offset;
        if (payload < count * 8)
            raise(ErrorCode::TruncatedPayload, "payload has " + std::to_string(payload) + " bytes, header implies " +
                                                   std::to_string(count * 8));
        if (payload > count * 8)
            raise(ErrorCode::HeaderInconsistent, "payload has " + std::to_string(payload - count * 8) +
                                                     " trailing bytes beyond the header dimensions");

        trace.data.resize(count);
        const std::uint8_t *src = bytes.data() + offset;
        for (std::size_t i = 0; i < count; ++i, src += 8)
            trace.data[i] = cf(std::bit_cast<float>(get_u32(src)), std::bit_cast<float>(get_u32(src + 4)));
        return trace;
    }

    std::vector<std::uint8_t> read_file(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            raise(ErrorCode::IoError, "cannot open '" + path + "'");
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    }

    void write_file(const std::string &path, std::span<const std::uint8_t> bytes)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            raise(ErrorCode::IoError, "cannot write '" + path + "'");
        out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        if (!out)
            raise(ErrorCode::IoError, "write to '" + path + "' failed");
    }

    void write_text_file(const std::string &path, std::string_view text)
    {
        write_file(path, std::span(reinterpret_cast<const std::uint8_t *>(text.data()), text.size()));
    }

    void save_trace(const ChannelTrace &trace, const std::string &path) { write_file(path, write_trace(trace)); }

    ChannelTrace load_trace(const std::string &path) { return read_trace(read_file(path)); }

    std::vector<std::uint8_t> write_covariances(const CovarianceDump &dump)
    {
        const std::size_t count = dump.covariances.size();
        const std::size_t n_r = count ? static_cast<std::size_t>(dump.covariances.front().dim()) : 0;
        std::vector<std::size_t> samples;
        for (const CovarianceMatrix &c : dump.covariances)
        {
            if (static_cast<std::size_t>(c.dim()) != n_r || c.matrix.cols() != c.matrix.rows())
                raise(ErrorCode::DimensionMismatch, "covariances in one dump must share their size");
            samples.push_back(c.sample_count);
        }
        if (dump.anchors.size() != count)
            raise(ErrorCode::DimensionMismatch, "one anchor per covariance is required");

        const json header{{"n_r", n_r},       {"count", count},
                          {"anchors_m", dump.anchors}, {"sample_counts", samples},
                          {"source_hash", dump.source_hash}, {"tool", tool_version},
                          {"layout", "column-major complex float64 (re, im) little-endian"}};
        std::vector<std::uint8_t> out = preamble("SCOV", header.dump());
        const std::size_t offset = out.size();
        out.resize(offset + count * n_r * n_r * 16);
        std::uint8_t *dst = out.data() + offset;
        for (const CovarianceMatrix &c : dump.covariances)
            for (Eigen::Index i = 0; i < c.matrix.size(); ++i, dst += 16)
            {
                put_u64(dst, std::bit_cast<std::uint64_t>(c.matrix.data()[i].real()));
                put_u64(dst + 8, std::bit_cast<std::uint64_t>(c.matrix.data()[i].imag()));
            }
        return out;
    }

    CovarianceDump read_covariances(std::span<const std::uint8_t> bytes)
    {
        auto [header, offset] = parse_preamble(bytes, "SCOV");
        CovarianceDump dump;
        std::size_t n_r = 0, count = 0;
        std::vector<std::size_t> samples;
        try
        {
            n_r = header.at("n_r").get<std::size_t>();
            count = header.at("count").get<std::size_t>();
            dump.anchors = header.at("anchors_m").get<std::vector<double>>();
            samples = header.at("sample_counts").get<std::vector<std::size_t>>();
            dump.source_hash = header.at("source_hash").get<std::string>();
        }
        catch (const json::exception &e)
        {
            raise(ErrorCode::HeaderInconsistent, std::string("header field error: ") + e.what());
        }
        if (dump.anchors.size() != count || samples.size() != count)
            raise(ErrorCode::HeaderInconsistent, "anchor/sample counts do not match the matrix count");
        const std::size_t expected = count * n_r * n_r * 16;
        if (bytes.size() - offset < expected)
            raise(ErrorCode::TruncatedPayload, "covariance payload is truncated");
        if (bytes.size() - offset > expected)
            raise(ErrorCode::HeaderInconsistent, "covariance payload has trailing bytes");

        const std::uint8_t *src = bytes.data() + offset;
        for (std::size_t k = 0; k < count; ++k)
        {
            CovarianceMatrix c;
            c.sample_count = samples[k];
            c.matrix.resize(static_cast<Eigen::Index>(n_r), static_cast<Eigen::Index>(n_r));
            for (Eigen::Index i = 0; i < c.matrix.size(); ++i, src += 16)
                c.matrix.data()[i] = cd(std::bit_cast<double>(get_u64(src)), std::bit_cast<double>(get_u64(src + 8)));
            dump.covariances.push_back(std::move(c));
        }
        return dump;
    }

    // ---- CSV ----------------------------------------------------------------------------------

    namespace
    {
        void provenance(std::ostringstream &os, const CsvProvenance &prov)
        {
            os << "# " << tool_version << '\n' << "# config_digest=" << prov.config_digest << '\n';
        }

        std::vector<std::string_view> split(std::string_view line, char sep)
        {
            std::vector<std::string_view> out;
            std::size_t pos = 0;
            while (true)
            {
                const std::size_t next = line.find(sep, pos);
                out.push_back(line.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
                if (next == std::string_view::npos)
                    break;
                pos = next + 1;
            }
            return out;
        }

        void check_field(std::string_view s)
        {
            if (s.find_first_of(",\n\r") != std::string_view::npos)
                raise(ErrorCode::InvalidConfig, "CSV field '" + std::string(s) + "' contains a separator");
        }
    }

    std::string write_curves_csv(const std::vector<SimilarityCurve> &curves, const CsvProvenance &prov)
    {
        std::ostringstream os;
        provenance(os, prov);
        for (const SimilarityCurve &c : curves)
        {
            check_field(c.track_id);
            if (c.ground_truth)
            {
                check_field(*c.ground_truth);
                os << "# ground_truth," << c.track_id << ',' << *c.ground_truth << '\n';
            }
        }
        os << "track_id,lttl_index,distance_m,cmd_similarity\n";
        for (const SimilarityCurve &c : curves)
            for (std::size_t k = 0; k < c.samples.size(); ++k)
                os << c.track_id << ',' << k << ',' << format_fixed(c.samples[k].distance, 6) << ','
                   << format_fixed(c.samples[k].value, 12) << '\n';
        return os.str();
    }

    std::vector<SimilarityCurve> read_curves_csv(std::string_view text)
    {
        std::vector<SimilarityCurve> curves;
        std::map<std::string, std::size_t> index;
        std::map<std::string, std::string> truth;
        bool have_header = false;

        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos < text.size())
        {
            const std::size_t end = std::min(text.find('\n', pos), text.size());
            std::string_view line = text.substr(pos, end - pos);
            pos = end + 1;
            ++line_no;
            if (!line.empty() && line.back() == '\r')
                line.remove_suffix(1);
            if (line.empty())
                continue;
            const auto fail = [&](const std::string &what) {
                raise(ErrorCode::ParseError, "curve CSV line " + std::to_string(line_no) + ": " + what);
            };
            if (line.front() == '#')
            {
                const auto f = split(line.substr(1), ',');
                if (f.size() == 3 && f[0] == " ground_truth")
                    truth[std::string(f[1])] = std::string(f[2]);
                continue;
            }
            if (!have_header)
            {
                if (line != "track_id,lttl_index,distance_m,cmd_similarity")
                    fail("unexpected header '" + std::string(line) + "'");
                have_header = true;
                continue;
            }
            const auto f = split(line, ',');
            if (f.size() != 4)
                fail("expected 4 fields");
            std::size_t k = 0;
            double d = 0.0, v = 0.0;
            if (std::from_chars(f[1].data(), f[1].data() + f[1].size(), k).ec != std::errc() ||
                std::from_chars(f[2].data(), f[2].data() + f[2].size(), d).ec != std::errc() ||
                std::from_chars(f[3].data(), f[3].data() + f[3].size(), v).ec != std::errc())
                fail("malformed number");
            const std::string id(f[0]);
            auto it = index.find(id);
            if (it == index.end())
            {
                it = index.emplace(id, curves.size()).first;
                curves.push_back({id, {}, std::nullopt});
            }
            SimilarityCurve &c = curves[it->second];
            if (k != c.samples.size())
                fail("lttl_index " + std::to_string(k) + " out of order for track " + id);
            if (!c.samples.empty() && d < c.samples.back().distance)
                fail("distance decreases within track " + id);
            if (!(v >= 0.0 && v <= 1.0))
                fail("cmd_similarity outside [0, 1]");
            c.samples.push_back({d, v});
        }
        if (!have_header)
            raise(ErrorCode::ParseError, "curve CSV has no header row");
        for (SimilarityCurve &c : curves)
            if (const auto t = truth.find(c.track_id); t != truth.end())
                c.ground_truth = t->second;
        return curves;
    }

    std::string write_envelopes_csv(const std::vector<ClassEnvelope> &envelopes,
                                    const std::vector<std::vector<SimilarityCurve>> &members, const CsvProvenance &prov)
    {
        if (envelopes.size() != members.size())
            raise(ErrorCode::DimensionMismatch, "one member list per envelope is required");
        std::ostringstream os;
        provenance(os, prov);
        for (std::size_t e = 0; e < envelopes.size(); ++e)
        {
            const ClassEnvelope &env = envelopes[e];
            check_field(env.label);
            os << "# representatives," << env.label << ',' << members[e][env.representatives[0]].track_id << ','
               << members[e][env.representatives[1]].track_id << '\n';
        }
        os << "class,lttl_index,distance_m,min,max,rep1,rep2\n";
        for (std::size_t e = 0; e < envelopes.size(); ++e)
        {
            const ClassEnvelope &env = envelopes[e];
            const SimilarityCurve &r1 = members[e][env.representatives[0]];
            const SimilarityCurve &r2 = members[e][env.representatives[1]];
            for (std::size_t k = 0; k < env.distances.size(); ++k)
                os << env.label << ',' << k << ',' << format_fixed(env.distances[k], 6) << ','
                   << format_fixed(env.min[k], 12) << ',' << format_fixed(env.max[k], 12) << ','
                   << format_fixed(r1.samples[k].value, 12) << ',' << format_fixed(r2.samples[k].value, 12) << '\n';
        }
        return os.str();
    }

    std::string write_report_csv(const std::vector<LabeledCurve> &labels, const ClassificationReport &report,
                                 const CsvProvenance &prov)
    {
        std::ostringstream os;
        provenance(os, prov);
        os << "track_id,label,ground_truth,rule_trace\n";
        for (const LabeledCurve &l : labels)
        {
            const std::string rules = l.label.rule_trace();
            check_field(l.track_id);
            check_field(rules);
            os << l.track_id << ',' << to_string(l.label.label) << ',' << l.ground_truth.value_or("") << ',' << rules
               << '\n';
        }
        os << "# counts";
        for (const TrackClass c : all_track_classes)
            os << ',' << to_string(c) << '=' << report.counts[static_cast<std::size_t>(c)];
        os << '\n' << "# confusion,truth\\label";
        for (const TrackClass c : all_track_classes)
            os << ',' << to_string(c);
        os << '\n';
        for (const TrackClass row : all_track_classes)
        {
            os << "# confusion," << to_string(row);
            for (const TrackClass col : all_track_classes)
                os << ',' << report.confusion[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
            os << '\n';
        }
        os << "# accuracy," << report.correct << '/' << report.with_truth << ',' << format_fixed(report.accuracy(), 4)
           << '\n';
        return os.str();
    }

    std::string write_report_json(const std::vector<LabeledCurve> &labels, const ClassificationReport &report,
                                  const CsvProvenance &prov)
    {
        json rows = json::array();
        for (const LabeledCurve &l : labels)
        {
            json preds = json::array();
            for (const Predicate &p : l.label.trace)
                preds.push_back({{"name", p.name}, {"value", p.value}, {"threshold", p.threshold}, {"passed", p.passed}});
            rows.push_back({{"track_id", l.track_id},
                            {"label", to_string(l.label.label)},
                            {"ground_truth", l.ground_truth ? json(*l.ground_truth) : json(nullptr)},
                            {"predicates", preds}});
        }
        json counts = json::object();
        json confusion = json::object();
        for (const TrackClass r : all_track_classes)
        {
            counts[std::string(to_string(r))] = report.counts[static_cast<std::size_t>(r)];
            json row = json::object();
            for (const TrackClass c : all_track_classes)
                row[std::string(to_string(c))] = report.confusion[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            confusion[std::string(to_string(r))] = row;
        }
        const json out{{"tool", tool_version},
                       {"config_digest", prov.config_digest},
                       {"curves", rows},
                       {"counts", counts},
                       {"confusion", confusion},
                       {"correct", report.correct},
                       {"with_ground_truth", report.with_truth},
                       {"accuracy", report.accuracy()}};
        return out.dump(2) + "\n";
    }
}
