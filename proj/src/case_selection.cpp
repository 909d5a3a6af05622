#include "etsynth/case_selection.hpp"

#include <boost/algorithm/string/case_conv.hpp>
#include <boost/algorithm/string/trim.hpp>
#include <boost/tokenizer.hpp>

#include <fstream>

#include "etsynth/errors.hpp"

namespace etsynth {
namespace {

std::vector<std::string> split_csv_line(const std::string& line)
{
    using Separator = boost::escaped_list_separator<char>;
    boost::tokenizer<Separator> tok(line, Separator('\\', ',', '"'));
    std::vector<std::string> fields;
    for (const auto& f : tok)
        fields.push_back(boost::algorithm::trim_copy(f));
    return fields;
}

std::string normalize_header(std::string name)
{
    std::erase_if(name, [](char c) { return c == ' ' || c == '_' || c == '-'; });
    boost::algorithm::to_lower(name);
    return name;
}

std::string strip_extension(const std::string& file)
{
    const auto dot = file.find_last_of('.');
    return dot == std::string::npos ? file : file.substr(0, dot);
}

}  // namespace

ViewPosition parse_view_position(std::string_view text) noexcept
{
    std::string s = boost::algorithm::trim_copy(std::string(text));
    boost::algorithm::to_upper(s);
    if (s == "AP")
        return ViewPosition::AP;
    if (s == "PA")
        return ViewPosition::PA;
    return ViewPosition::Other;
}

std::string_view to_string(ViewPosition view) noexcept
{
    switch (view) {
    case ViewPosition::AP:
        return "AP";
    case ViewPosition::PA:
        return "PA";
    case ViewPosition::Other:
        break;
    }
    return "other";
}

std::vector<CaseRecord> read_metadata(const std::filesystem::path& metadata_csv,
                                      const std::set<std::string>& known_tube_cases)
{
    std::ifstream in(metadata_csv);
    if (!in)
        throw IoError("cannot open metadata " + metadata_csv.string());

    std::vector<CaseRecord> records;
    std::string line;
    if (!std::getline(in, line))
        return records;
    if (line.starts_with("\xEF\xBB\xBF"))
        line.erase(0, 3);
    if (!line.empty() && line.back() == '\r')
        line.pop_back();

    const auto header = split_csv_line(line);
    std::optional<std::size_t> image_col, view_col;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const auto name = normalize_header(header[i]);
        if (name == "imageindex" && !image_col)
            image_col = i;
        else if (name == "viewposition" && !view_col)
            view_col = i;
    }
    if (!image_col || !view_col) {
        std::string missing;
        if (!image_col)
            missing += "'Image Index'";
        if (!view_col)
            missing += std::string(missing.empty() ? "" : ", ") + "'View Position'";
        throw SchemaError(metadata_csv.string() + ": missing column(s) " + missing);
    }

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        try {
            fields = split_csv_line(line);
        } catch (const boost::escaped_list_error& e) {
            throw ValidationError(metadata_csv.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
        if (fields.size() <= std::max(*image_col, *view_col))
            throw ValidationError(metadata_csv.string() + ":" + std::to_string(line_no) + ": too few fields");
        CaseRecord rec;
        rec.image_file = fields[*image_col];
        rec.case_id = strip_extension(rec.image_file);
        rec.view_position = parse_view_position(fields[*view_col]);
        rec.has_tube_annotation = known_tube_cases.contains(rec.case_id) || known_tube_cases.contains(rec.image_file);
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<CaseRecord> select_cases(const std::filesystem::path& metadata_csv, const CaseFilter& filter)
{
    auto records = read_metadata(metadata_csv, filter.excluded);
    std::erase_if(records, [&](const CaseRecord& r) {
        return r.view_position != filter.view || r.view_position == ViewPosition::Other || r.has_tube_annotation;
    });
    return records;
}

std::set<std::string> read_id_list(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open id list " + path.string());
    std::set<std::string> ids;
    std::string line;
    while (std::getline(in, line)) {
        boost::algorithm::trim(line);
        if (line.empty() || line.front() == '#')
            continue;
        ids.insert(line);
    }
    return ids;
}

}  // namespace etsynth
