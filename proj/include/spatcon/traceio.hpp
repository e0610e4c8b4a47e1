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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spatcon/classify.hpp"
#include "spatcon/covar.hpp"
#include "spatcon/evalpipe.hpp"
#include "spatcon/synth.hpp"

namespace spatcon
{
    // SCTR trace container, all integers little-endian:
    //
    //   offset 0   "SCTR"
    //   offset 4   u32 format version (1)
    //   offset 8   u32 header length L in bytes
    //   offset 12  header, UTF-8 JSON with sorted keys (dimensions, EvalConfig fields, anchors,
    //              scenario digest, units, effective configuration)
    //   offset 12+L payload, stts_count x N x n_r complex values as float32 (re, im) pairs,
    //              t-major, then subcarrier, then antenna
    //
    // The SCOV covariance dump uses the same preamble with magic "SCOV"; its payload holds
    // count x n_r x n_r complex values as float64 (re, im) pairs, column-major per matrix.
    inline constexpr std::uint32_t trace_format_version = 1;

    std::vector<std::uint8_t> write_trace(const ChannelTrace &trace);

    // Throws BadMagic, UnsupportedVersion, TruncatedPayload, HeaderInconsistent.
    ChannelTrace read_trace(std::span<const std::uint8_t> bytes);

    void save_trace(const ChannelTrace &trace, const std::string &path);
    ChannelTrace load_trace(const std::string &path);

    struct CovarianceDump
    {
        std::vector<CovarianceMatrix> covariances;
        std::vector<double> anchors;
        std::string source_hash; // scenario digest hash of the trace
    };

    std::vector<std::uint8_t> write_covariances(const CovarianceDump &dump);
    CovarianceDump read_covariances(std::span<const std::uint8_t> bytes);

    std::vector<std::uint8_t> read_file(const std::string &path);
    void write_file(const std::string &path, std::span<const std::uint8_t> bytes);
    void write_text_file(const std::string &path, std::string_view text);

    // ---- CSV ----------------------------------------------------------------------------------
    // Every CSV starts with "# <tool version>" and "# config_digest=<hex>" comment lines.
    // Numbers use '.' as decimal separator regardless of locale.

    struct CsvProvenance
    {
        std::string config_digest = "none";
    };

    // track_id,lttl_index,distance_m,cmd_similarity
    // Ground truth travels in "# ground_truth,<track_id>,<preset>" comment lines.
    std::string write_curves_csv(const std::vector<SimilarityCurve> &curves, const CsvProvenance &prov = {});
    // Groups rows by track_id in order of first appearance. Throws ParseError.
    std::vector<SimilarityCurve> read_curves_csv(std::string_view text);

    // class,lttl_index,distance_m,min,max,rep1,rep2
    // Representatives' track ids in "# representatives,<class>,<id1>,<id2>" comment lines.
    std::string write_envelopes_csv(const std::vector<ClassEnvelope> &envelopes,
                                    const std::vector<std::vector<SimilarityCurve>> &members,
                                    const CsvProvenance &prov = {});

    // track_id,label,ground_truth,rule_trace with confusion/accuracy footer comment lines.
    std::string write_report_csv(const std::vector<LabeledCurve> &labels, const ClassificationReport &report,
                                 const CsvProvenance &prov = {});

    // Same content as structured JSON text.
    std::string write_report_json(const std::vector<LabeledCurve> &labels, const ClassificationReport &report,
                                  const CsvProvenance &prov = {});
}
