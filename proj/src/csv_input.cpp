/*
   Copyright 2026 The ghchart Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "ghchart/csv_input.hpp"

#include <charconv>
#include <fstream>
#include <string_view>
#include <unordered_map>

namespace ghchart {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

}  // namespace

std::vector<InputRecord> read_records(std::istream& in) {
    std::vector<InputRecord> records;
    std::string raw;
    std::size_t line_no = 0;
    bool seen_header = false;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
        line = trim(line);
        if (line.empty()) continue;

        const auto fields = split_commas(line);
        if (!seen_header) {
            if (fields.size() != 2 || fields[0] != "subgroup_id" || fields[1] != "count") {
                throw CsvError(line_no, "expected header 'subgroup_id,count'");
            }
            seen_header = true;
            continue;
        }
        if (fields.size() != 2) {
            throw CsvError(line_no, "expected 2 fields, found " + std::to_string(fields.size()));
        }
        if (fields[0].empty()) throw CsvError(line_no, "empty subgroup_id");

        std::int64_t count = 0;
        const auto text = fields[1];
        const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), count);
        if (text.empty() || ec != std::errc{} || end != text.data() + text.size()) {
            throw CsvError(line_no, "count '" + std::string(text) + "' is not an integer");
        }
        records.push_back({std::string(fields[0]), count, line_no});
    }
    if (records.empty()) throw CsvError(0, "no records");
    return records;
}

LabeledStudy read_study(std::istream& in, std::int64_t shift) {
    if (shift < 0) throw ValidationError("shift must be non-negative");
    const auto records = read_records(in);
    std::vector<std::string> ids;
    std::vector<StudyData::Subgroup> groups;
    std::unordered_map<std::string, std::size_t> index;
    for (const auto& r : records) {
        if (r.count < shift) {
            throw CsvError(r.line, "count " + std::to_string(r.count) + " is below the shift " +
                                       std::to_string(shift));
        }
        auto [it, inserted] = index.try_emplace(r.subgroup_id, groups.size());
        if (inserted) {
            ids.push_back(r.subgroup_id);
            groups.emplace_back();
        }
        groups[it->second].push_back(r.count);
    }
    return {std::move(ids), StudyData(std::move(groups), shift)};
}

LabeledStudy read_study_file(const std::filesystem::path& path, std::int64_t shift) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path.string() + "'");
    return read_study(in, shift);
}

}  // namespace ghchart
