#pragma once

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <utility>
#include <string>
#include <string_view>
#include <vector>

#include "firedes/errors.hpp"
#include "firedes/random.hpp"

namespace firedes {

// A labeled feature vector. Labels are normalized to {0, 1} with the minority
// class as 1 (the positive class). `id` is the sample's ordinal position in
// its dataset, stable across fold splits and filtering.
struct Sample {
    std::vector<double> features;
    int label = 0;
    std::size_t id = 0;
};

struct Dataset {
    std::string name;
    std::vector<Sample> samples;
    std::size_t n_features = 0;
    int minority_label = 1;
    // Original KEEL tokens, kept so datasets can be written back out.
    std::string negative_token = "negative";
    std::string positive_token = "positive";
    std::vector<std::string> attribute_names;  // feature columns, in order
    std::string class_attribute_name = "Class";

    std::size_t count_label(int label) const {
        std::size_t n = 0;
        for (const Sample& s : samples) n += (s.label == label);
        return n;
    }
};

// One fold of a cross-validation split. Indices point into Dataset::samples.
struct FoldSplit {
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> test_indices;
    int fold_id = 0;
};

// Majority count over minority count; >= 1 for any two-class dataset.
inline double imbalance_ratio(const Dataset& ds) {
    const std::size_t pos = ds.count_label(1);
    const std::size_t neg = ds.count_label(0);
    if (pos == 0 || neg == 0) {
        throw DegenerateDatasetError("imbalance ratio needs both classes present");
    }
    const double minority = static_cast<double>(std::min(pos, neg));
    const double majority = static_cast<double>(std::max(pos, neg));
    return majority / minority;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

inline std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

inline std::vector<std::string> split_csv(std::string_view s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == ',') {
            out.emplace_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

struct KeelAttribute {
    std::string name;
    bool nominal = false;
    std::vector<std::string> values;  // nominal only
};

}  // namespace detail

// Parses a KEEL .dat file: @relation / @attribute lines, optional @inputs and
// @outputs, then @data with comma-separated rows. Keywords are matched
// case-insensitively and surrounding whitespace is ignored. The class column
// is the @outputs attribute when declared, otherwise the last attribute.
// Exactly two classes may appear in the data; the minority class becomes
// label 1 and, on equal counts, the class declared second wins.
inline Dataset parse_keel(std::string_view text, std::string_view name_override = {}) {
    using detail::KeelAttribute;
    using detail::lower;
    using detail::trim;

    std::vector<KeelAttribute> attributes;
    std::string relation;
    std::string outputs_name;
    bool in_data = false;

    std::vector<std::pair<std::vector<std::string>, std::size_t>> rows;  // tokens + line no

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view raw = text.substr(
            pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '%') continue;

        if (!in_data && line.front() == '@') {
            const std::size_t sp = line.find_first_of(" \t");
            const std::string keyword =
                lower(line.substr(0, sp == std::string_view::npos ? line.size() : sp));
            const std::string_view rest =
                sp == std::string_view::npos ? std::string_view{} : trim(line.substr(sp));

            if (keyword == "@relation") {
                if (rest.empty()) throw ParseError(line_no, "@relation without a name");
                relation = std::string(rest);
            } else if (keyword == "@attribute") {
                const std::size_t name_end = rest.find_first_of(" \t{");
                if (name_end == std::string_view::npos) {
                    throw ParseError(line_no, "@attribute without a type");
                }
                KeelAttribute attr;
                attr.name = std::string(trim(rest.substr(0, name_end)));
                std::string_view type = trim(rest.substr(name_end));
                if (type.empty()) throw ParseError(line_no, "@attribute without a type");
                if (type.front() == '{') {
                    const std::size_t close = type.find('}');
                    if (close == std::string_view::npos) {
                        throw ParseError(line_no, "unterminated nominal value list");
                    }
                    attr.nominal = true;
                    attr.values = detail::split_csv(type.substr(1, close - 1));
                    if (attr.values.empty() || attr.values.front().empty()) {
                        throw ParseError(line_no, "empty nominal value list");
                    }
                } else {
                    const std::string t = lower(type.substr(0, type.find_first_of(" \t[")));
                    if (t != "real" && t != "integer" && t != "numeric") {
                        throw ParseError(line_no, "unsupported attribute type '" + t + "'");
                    }
                }
                attributes.push_back(std::move(attr));
            } else if (keyword == "@inputs" || keyword == "@input") {
                // informational; features are all non-output attributes
            } else if (keyword == "@outputs" || keyword == "@output") {
                const auto names = detail::split_csv(rest);
                if (names.size() != 1) {
                    throw ParseError(line_no, "expected exactly one @outputs attribute");
                }
                outputs_name = names.front();
            } else if (keyword == "@data") {
                in_data = true;
            } else {
                throw ParseError(line_no, "unknown header keyword '" + keyword + "'");
            }
            continue;
        }

        if (!in_data) throw ParseError(line_no, "data row before @data section");
        rows.emplace_back(detail::split_csv(line), line_no);
    }

    if (relation.empty()) throw ParseError("missing @relation header");
    if (!in_data) throw ParseError("missing @data section");
    if (attributes.size() < 2) throw ParseError("need at least one feature and a class attribute");

    // Locate the class column.
    std::size_t class_col = attributes.size() - 1;
    if (!outputs_name.empty()) {
        const auto it = std::find_if(attributes.begin(), attributes.end(),
                                     [&](const KeelAttribute& a) { return a.name == outputs_name; });
        if (it == attributes.end()) {
            throw ParseError("@outputs names unknown attribute '" + outputs_name + "'");
        }
        class_col = static_cast<std::size_t>(it - attributes.begin());
    }
    const KeelAttribute& class_attr = attributes[class_col];

    Dataset ds;
    ds.name = name_override.empty() ? relation : std::string(name_override);
    ds.n_features = attributes.size() - 1;
    ds.class_attribute_name = class_attr.name;
    for (std::size_t a = 0; a < attributes.size(); ++a) {
        if (a != class_col) ds.attribute_names.push_back(attributes[a].name);
    }

    // First pass: collect rows, record class tokens in order of declaration
    // (or first appearance when the class attribute is not nominal).
    std::vector<std::string> token_order = class_attr.nominal ? class_attr.values
                                                              : std::vector<std::string>{};
    std::map<std::string, std::size_t> token_counts;
    struct RawRow {
        std::vector<double> features;
        std::string token;
    };
    std::vector<RawRow> parsed;
    parsed.reserve(rows.size());

    for (const auto& [tokens, row_line] : rows) {
        if (tokens.size() != attributes.size()) {
            throw ParseError(row_line, "expected " + std::to_string(attributes.size()) +
                                           " fields, got " + std::to_string(tokens.size()));
        }
        RawRow row;
        row.features.reserve(ds.n_features);
        for (std::size_t a = 0; a < attributes.size(); ++a) {
            const std::string& tok = tokens[a];
            if (tok.empty() || tok == "?") {
                throw ParseError(row_line, "missing value in column '" + attributes[a].name + "'");
            }
            if (a == class_col) {
                row.token = tok;
                continue;
            }
            char* end = nullptr;
            const double v = std::strtod(tok.c_str(), &end);
            if (end == tok.c_str() || *end != '\0') {
                throw ParseError(row_line, "non-numeric value '" + tok + "' in column '" +
                                               attributes[a].name + "'");
            }
            row.features.push_back(v);
        }
        if (std::find(token_order.begin(), token_order.end(), row.token) == token_order.end()) {
            token_order.push_back(row.token);
        }
        ++token_counts[row.token];
        parsed.push_back(std::move(row));
    }

    if (token_counts.size() > 2) {
        throw UnsupportedProblemError("dataset '" + ds.name + "' has " +
                                      std::to_string(token_counts.size()) +
                                      " classes; only binary problems are supported");
    }
    if (token_counts.size() < 2) {
        throw DegenerateDatasetError("dataset '" + ds.name + "' has samples of one class only");
    }

    // Appearing tokens in declared order.
    std::vector<std::string> present;
    for (const std::string& t : token_order) {
        if (token_counts.count(t)) present.push_back(t);
    }
    // Minority -> positive (label 1); tie -> the token declared second.
    const std::size_t c0 = token_counts[present[0]];
    const std::size_t c1 = token_counts[present[1]];
    const std::string positive = (c1 <= c0) ? present[1] : present[0];
    const std::string negative = (c1 <= c0) ? present[0] : present[1];
    ds.positive_token = positive;
    ds.negative_token = negative;
    ds.minority_label = 1;

    ds.samples.reserve(parsed.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        Sample s;
        s.features = std::move(parsed[i].features);
        s.label = (parsed[i].token == positive) ? 1 : 0;
        s.id = i;
        ds.samples.push_back(std::move(s));
    }
    return ds;
}

// Writes a dataset back to KEEL text. parse_keel(to_keel(ds)) reproduces the
// sample matrix and labels exactly; %.17g keeps doubles round-trippable.
inline std::string to_keel(const Dataset& ds) {
    std::string out = "@relation " + ds.name + "\n";
    char buf[64];
    for (std::size_t a = 0; a < ds.n_features; ++a) {
        const std::string name =
            a < ds.attribute_names.size() ? ds.attribute_names[a] : "a" + std::to_string(a + 1);
        out += "@attribute " + name + " real\n";
    }
    out += "@attribute " + ds.class_attribute_name + " {" + ds.negative_token + ", " +
           ds.positive_token + "}\n";
    out += "@data\n";
    for (const Sample& s : ds.samples) {
        for (double v : s.features) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out += buf;
            out += ", ";
        }
        out += (s.label == 1) ? ds.positive_token : ds.negative_token;
        out += "\n";
    }
    return out;
}

// Deterministic stratified k-fold split: per class, indices are shuffled with
// the seeded generator and dealt into k chunks whose sizes differ by at most
// one, so every fold keeps the class proportions within one sample.
inline std::vector<FoldSplit> stratified_folds(const Dataset& ds, std::size_t k,
                                               std::uint32_t seed) {
    if (k < 2) throw StratificationError("fold count must be at least 2");
    std::vector<std::vector<std::size_t>> by_class(2);
    for (const Sample& s : ds.samples) by_class[s.label].push_back(s.id);
    for (int label = 0; label < 2; ++label) {
        if (by_class[label].size() < k) {
            throw StratificationError("class " + std::to_string(label) + " has " +
                                      std::to_string(by_class[label].size()) +
                                      " samples; cannot make " + std::to_string(k) + " folds");
        }
    }

    std::mt19937 rng(seed);
    std::vector<std::vector<std::size_t>> test_sets(k);
    for (int label = 0; label < 2; ++label) {
        auto& ids = by_class[label];
        shuffle_in_place(ids, rng);
        const std::size_t base = ids.size() / k;
        const std::size_t extra = ids.size() % k;
        std::size_t cursor = 0;
        for (std::size_t f = 0; f < k; ++f) {
            const std::size_t take = base + (f < extra ? 1 : 0);
            for (std::size_t j = 0; j < take; ++j) test_sets[f].push_back(ids[cursor++]);
        }
    }

    std::vector<FoldSplit> folds(k);
    std::vector<int> fold_of(ds.samples.size(), -1);
    for (std::size_t f = 0; f < k; ++f) {
        for (std::size_t id : test_sets[f]) fold_of[id] = static_cast<int>(f);
    }
    for (std::size_t f = 0; f < k; ++f) {
        folds[f].fold_id = static_cast<int>(f);
        for (std::size_t id = 0; id < ds.samples.size(); ++id) {
            if (fold_of[id] == static_cast<int>(f)) {
                folds[f].test_indices.push_back(id);
            } else {
                folds[f].train_indices.push_back(id);
            }
        }
    }
    return folds;
}

namespace detail {

// Multiset key for matching rows across fold files: exact feature values plus
// the class token. Values come from the same textual parse, so equality is
// bit-exact.
using RowKey = std::pair<std::vector<double>, int>;

inline RowKey row_key(const Sample& s) { return {s.features, s.label}; }

}  // namespace detail

// Loads KEEL's pre-partitioned folds. Test partitions must be disjoint and
// reassemble into one dataset; each train file must equal the union minus its
// own test partition (as a multiset of rows).
inline std::pair<Dataset, std::vector<FoldSplit>> load_keel_folds(
    const std::vector<std::string>& train_texts, const std::vector<std::string>& test_texts,
    std::string_view name_override = {}) {
    if (train_texts.size() != test_texts.size() || train_texts.empty()) {
        throw InconsistentFoldsError("need matching train/test file pairs");
    }
    const std::size_t k = train_texts.size();

    std::vector<Dataset> train_ds, test_ds;
    for (std::size_t f = 0; f < k; ++f) {
        train_ds.push_back(parse_keel(train_texts[f]));
        test_ds.push_back(parse_keel(test_texts[f]));
    }

    // One schema across all files.
    const Dataset& ref = test_ds.front();
    auto same_schema = [&](const Dataset& d) {
        return d.n_features == ref.n_features && d.attribute_names == ref.attribute_names &&
               ((d.positive_token == ref.positive_token && d.negative_token == ref.negative_token) ||
                (d.positive_token == ref.negative_token && d.negative_token == ref.positive_token));
    };
    for (const Dataset& d : train_ds) {
        if (!same_schema(d)) throw ParseError("attribute schema mismatch across fold files");
    }
    for (const Dataset& d : test_ds) {
        if (!same_schema(d)) throw ParseError("attribute schema mismatch across fold files");
    }

    // Token counts over the union decide the positive class once, globally;
    // per-file minority can differ from the union's.
    std::map<std::string, std::size_t> token_counts;
    for (const Dataset& d : test_ds) {
        token_counts[d.positive_token] += d.count_label(1);
        token_counts[d.negative_token] += d.count_label(0);
    }
    if (token_counts.size() != 2) {
        throw InconsistentFoldsError("fold files do not agree on two class tokens");
    }

    Dataset unioned;
    unioned.name = name_override.empty() ? ref.name : std::string(name_override);
    unioned.n_features = ref.n_features;
    unioned.attribute_names = ref.attribute_names;
    unioned.class_attribute_name = ref.class_attribute_name;
    {
        // Keep the reference file's declaration order for the tie rule.
        const std::string first = ref.negative_token, second = ref.positive_token;
        const std::size_t cf = token_counts[first], cs = token_counts[second];
        unioned.positive_token = (cs <= cf) ? second : first;
        unioned.negative_token = (cs <= cf) ? first : second;
    }

    std::vector<FoldSplit> folds(k);
    for (std::size_t f = 0; f < k; ++f) {
        folds[f].fold_id = static_cast<int>(f);
        for (const Sample& s : test_ds[f].samples) {
            Sample copy = s;
            const std::string& tok = (s.label == 1) ? test_ds[f].positive_token
                                                    : test_ds[f].negative_token;
            copy.label = (tok == unioned.positive_token) ? 1 : 0;
            copy.id = unioned.samples.size();
            folds[f].test_indices.push_back(copy.id);
            unioned.samples.push_back(std::move(copy));
        }
    }
    if (unioned.count_label(0) == 0 || unioned.count_label(1) == 0) {
        throw DegenerateDatasetError("union of test partitions has one class only");
    }

    for (std::size_t f = 0; f < k; ++f) {
        std::map<detail::RowKey, long> balance;
        for (std::size_t id = 0; id < unioned.samples.size(); ++id) {
            const bool in_test =
                std::find(folds[f].test_indices.begin(), folds[f].test_indices.end(), id) !=
                folds[f].test_indices.end();
            if (!in_test) {
                folds[f].train_indices.push_back(id);
                ++balance[detail::row_key(unioned.samples[id])];
            }
        }
        for (const Sample& s : train_ds[f].samples) {
            Sample normalized = s;
            const std::string& tok = (s.label == 1) ? train_ds[f].positive_token
                                                    : train_ds[f].negative_token;
            normalized.label = (tok == unioned.positive_token) ? 1 : 0;
            --balance[detail::row_key(normalized)];
        }
        for (const auto& [key, count] : balance) {
            if (count != 0) {
                throw InconsistentFoldsError(
                    "fold " + std::to_string(f) +
                    ": train file does not match the union of the other test partitions");
            }
        }
    }
    return {std::move(unioned), std::move(folds)};
}

// Materializes the samples selected by an index set.
inline std::vector<Sample> gather(const Dataset& ds, const std::vector<std::size_t>& indices) {
    std::vector<Sample> out;
    out.reserve(indices.size());
    for (std::size_t id : indices) out.push_back(ds.samples[id]);
    return out;
}

}  // namespace firedes
