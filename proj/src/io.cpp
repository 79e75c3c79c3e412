#include "rumor/io.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "rumor/error.hpp"

namespace rumor::io {

void for_each_line(const std::filesystem::path& path,
                   const std::function<void(std::size_t, std::string_view)>& fn)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::MissingFile, path.string());
    }
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (!view.empty() && view.back() == '\r') {
            view.remove_suffix(1);
        }
        fn(line_no, view);
    }
}

bool is_blank(std::string_view s) noexcept
{
    return trim(s).empty();
}

std::string_view trim(std::string_view s) noexcept
{
    constexpr std::string_view ws = " \t\r\n\f\v";
    auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) {
        return {};
    }
    auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

AtomicFile::AtomicFile(std::filesystem::path path)
    : path_(std::move(path)), tmp_(path_.string() + ".tmp")
{
    if (path_.has_parent_path()) {
        std::filesystem::create_directories(path_.parent_path());
    }
    out_.open(tmp_, std::ios::binary | std::ios::trunc);
    if (!out_) {
        throw Error(ErrorCode::Io, "cannot open " + tmp_.string() + " for writing");
    }
}

AtomicFile::~AtomicFile()
{
    if (!committed_) {
        out_.close();
        std::error_code ec;
        std::filesystem::remove(tmp_, ec);
    }
}

void AtomicFile::commit()
{
    out_.flush();
    if (!out_) {
        throw Error(ErrorCode::Io, "write failed: " + tmp_.string());
    }
    out_.close();
    std::filesystem::rename(tmp_, path_);
    committed_ = true;
}

std::string format_double(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string csv_field(std::string_view s)
{
    if (s.find_first_of(",\"\n\r") == std::string_view::npos) {
        return std::string(s);
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace rumor::io
