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

#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "ghchart/estimators.hpp"

namespace ghchart {

// Input rows look like
//
//   subgroup_id,count
//   g1,1
//   g1,0
//   g2,2
//
// Rows sharing a subgroup_id form one subgroup; subgroups are ordered by
// first appearance. A UTF-8 BOM, CRLF line endings, surrounding spaces and
// blank lines are tolerated. Rejected, each with the 1-based line number:
//   - missing or different header
//   - a row without exactly two fields
//   - an empty subgroup_id
//   - a count that is not a base-10 integer
//   - a count below the shift
//   - no data rows ("no records")
class CsvError : public ValidationError {
public:
    CsvError(std::size_t line, const std::string& message)
        : ValidationError(line == 0 ? message
                                    : "line " + std::to_string(line) + ": " + message),
          line_(line) {}

    // 0 when the error is not tied to a line.
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct InputRecord {
    std::string subgroup_id;
    std::int64_t count;
    std::size_t line;
};

std::vector<InputRecord> read_records(std::istream& in);

struct LabeledStudy {
    std::vector<std::string> subgroup_ids;  // parallel to data.subgroups()
    StudyData data;
};

LabeledStudy read_study(std::istream& in, std::int64_t shift);
LabeledStudy read_study_file(const std::filesystem::path& path, std::int64_t shift);

}  // namespace ghchart
