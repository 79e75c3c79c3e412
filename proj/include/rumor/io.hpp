#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <string_view>

namespace rumor::io {

/// Calls `fn(line_no, line)` for every line of `path` (1-based numbering,
/// trailing '\r' removed). Throws MissingFile if the file cannot be opened.
void for_each_line(const std::filesystem::path& path,
                   const std::function<void(std::size_t, std::string_view)>& fn);

bool is_blank(std::string_view s) noexcept;
std::string_view trim(std::string_view s) noexcept;

/// Writes to `<path>.tmp` and renames over `path` on commit(). A writer that
/// is destroyed without commit() removes its temp file, so a failed run never
/// leaves a truncated output behind.
class AtomicFile {
public:
    explicit AtomicFile(std::filesystem::path path);
    ~AtomicFile();

    AtomicFile(const AtomicFile&) = delete;
    AtomicFile& operator=(const AtomicFile&) = delete;

    std::ofstream& stream() { return out_; }
    void commit();

private:
    std::filesystem::path path_;
    std::filesystem::path tmp_;
    std::ofstream out_;
    bool committed_ = false;
};

/// Shortest round-trip decimal form of a double ("0.5", "31.2", "-inf").
std::string format_double(double v);

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(std::string_view s);

}  // namespace rumor::io
