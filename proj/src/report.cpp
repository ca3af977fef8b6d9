#include "isolab/report.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <json.hpp>

#include "isolab/errors.hpp"

namespace isolab {

namespace {

constexpr std::size_t kColumns = 8;

std::size_t method_rank(TransformKind kind) {
    return static_cast<std::size_t>(
        std::find(kAllTransformKinds.begin(), kAllTransformKinds.end(), kind) - kAllTransformKinds.begin());
}

std::string seconds_text(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", s);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::array<std::string, kColumns> cells(const ReportRow& row) {
    return {method_label(row.transform),  row.embedder,
            std::to_string(row.ecc),      std::to_string(row.fn),
            std::to_string(row.fp),       std::to_string(row.pairs),
            std::to_string(row.excluded), seconds_text(row.seconds)};
}

struct Section {
    std::string label;  // empty for whole-dataset rows
    std::vector<const ReportRow*> rows;
};

std::vector<Section> sections(std::span<const ReportRow> rows) {
    std::vector<Section> out(1);
    for (const auto& row : rows) {
        if (row.origin.empty()) {
            out[0].rows.push_back(&row);
            continue;
        }
        auto it = std::find_if(out.begin() + 1, out.end(),
                               [&](const Section& s) { return s.rows.front()->origin == row.origin; });
        if (it == out.end()) {
            out.push_back({});
            it = out.end() - 1;
        }
        it->rows.push_back(&row);
    }
    for (auto& s : out) {
        std::stable_sort(s.rows.begin(), s.rows.end(), [](const ReportRow* a, const ReportRow* b) {
            return method_rank(a->transform.kind) < method_rank(b->transform.kind);
        });
        if (!s.rows.empty() && !s.rows.front()->origin.empty()) {
            const auto* first = s.rows.front();
            s.label = first->origin + "(" + std::to_string(first->pairs + first->excluded) + ")";
        }
    }
    if (out[0].rows.empty()) out.erase(out.begin());
    return out;
}

std::string render_csv(const std::vector<Section>& secs, const ReportMetadata& meta) {
    std::string out;
    for (const auto& [k, v] : meta) out += "# " + k + "=" + v + "\n";
    out += std::string(kCsvHeader) + "\n";
    for (const auto& s : secs) {
        if (!s.label.empty()) out += "# origin=" + s.label + "\n";
        for (const auto* row : s.rows) {
            const auto c = cells(*row);
            for (std::size_t i = 0; i < kColumns; ++i) {
                out += csv_field(c[i]);
                out += i + 1 < kColumns ? ',' : '\n';
            }
        }
    }
    return out;
}

std::string render_md(const std::vector<Section>& secs, const ReportMetadata& meta) {
    static const std::array<std::string, kColumns> header = {
        "Method", "Embedder", "ECC", "FN", "FP", "Pairs", "Excluded", "Seconds"};
    std::string out;
    for (const auto& [k, v] : meta) out += "# " + k + "=" + v + "\n";
    for (const auto& s : secs) {
        std::array<std::size_t, kColumns> width{};
        for (std::size_t i = 0; i < kColumns; ++i) width[i] = header[i].size();
        std::vector<std::array<std::string, kColumns>> body;
        for (const auto* row : s.rows) {
            body.push_back(cells(*row));
            for (std::size_t i = 0; i < kColumns; ++i) width[i] = std::max(width[i], body.back()[i].size());
        }
        auto line = [&](const std::array<std::string, kColumns>& c) {
            std::string l = "|";
            for (std::size_t i = 0; i < kColumns; ++i) {
                // text columns left-aligned, numbers right-aligned
                const std::string pad(width[i] - c[i].size(), ' ');
                l += " " + (i < 2 ? c[i] + pad : pad + c[i]) + " |";
            }
            return l + "\n";
        };
        out += "\n";
        if (!s.label.empty()) out += "**" + s.label + "**\n\n";
        out += line(header);
        out += "|";
        for (std::size_t i = 0; i < kColumns; ++i) {
            out += i < 2 ? ":" + std::string(width[i] + 1, '-') + "|"
                         : std::string(width[i] + 1, '-') + ":|";
        }
        out += "\n";
        for (const auto& c : body) out += line(c);
    }
    return out;
}

std::string render_jsonl(const std::vector<Section>& secs, const ReportMetadata& meta) {
    std::string out;
    if (!meta.empty()) {
        nlohmann::ordered_json m;
        for (const auto& [k, v] : meta) m[k] = v;
        out += nlohmann::ordered_json{{"meta", m}}.dump() + "\n";
    }
    for (const auto& s : secs) {
        for (const auto* row : s.rows) {
            nlohmann::ordered_json j;
            j["method"] = method_label(row->transform);
            j["embedder"] = row->embedder;
            j["ecc"] = row->ecc;
            j["fn"] = row->fn;
            j["fp"] = row->fp;
            j["pairs"] = row->pairs;
            j["excluded"] = row->excluded;
            j["seconds"] = row->seconds;
            if (!row->origin.empty()) j["origin"] = row->origin;
            out += j.dump() + "\n";
        }
    }
    return out;
}

}  // namespace

ReportFormat parse_report_format(std::string_view token) {
    if (token == "csv") return ReportFormat::csv;
    if (token == "md") return ReportFormat::md;
    if (token == "jsonl") return ReportFormat::jsonl;
    throw ContractError("unknown report format '" + std::string(token) + "' (csv, md, jsonl)");
}

std::string method_label(const TransformSpec& spec) {
    TransformSpec defaults;
    defaults.kind = spec.kind;
    std::string label(display_name(spec.kind));
    if (to_token(spec) != to_token(defaults)) label += " [" + to_token(spec) + "]";
    return label;
}

std::string report_table(std::span<const ReportRow> rows, ReportFormat format, const ReportMetadata& meta) {
    const auto secs = sections(rows);
    switch (format) {
        case ReportFormat::csv: return render_csv(secs, meta);
        case ReportFormat::md: return render_md(secs, meta);
        case ReportFormat::jsonl: return render_jsonl(secs, meta);
    }
    return {};
}

}  // namespace isolab
