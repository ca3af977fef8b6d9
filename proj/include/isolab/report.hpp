#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "isolab/eval.hpp"

namespace isolab {

enum class ReportFormat { csv, md, jsonl };

/// Throws ContractError for anything but csv, md, jsonl.
ReportFormat parse_report_format(std::string_view token);

inline constexpr std::string_view kCsvHeader = "method,embedder,ecc,fn,fp,pairs,excluded,seconds";

/// Ordered key/value provenance block printed ahead of the table.
using ReportMetadata = std::vector<std::pair<std::string, std::string>>;

/// Method column: the display name, with the transform token appended when
/// its parameters differ from the defaults.
std::string method_label(const TransformSpec& spec);

/// Renders rows in method order (Base, Virtual Node, ..., Extra Node; stable
/// otherwise). Whole-dataset rows come first; rows carrying an origin follow
/// in one section per origin labelled "Name(pairs)".
///
/// csv and md print metadata as leading "# key=value" lines; jsonl prints it as
/// a first {"meta": {...}} line followed by one object per row keyed like the
/// CSV header (plus "origin" for breakdown rows).
std::string report_table(std::span<const ReportRow> rows, ReportFormat format,
                         const ReportMetadata& meta = {});

}  // namespace isolab
