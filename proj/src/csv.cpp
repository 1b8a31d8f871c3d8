#include "uu/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <system_error>

#include "uu/errors.hpp"

namespace uu {

namespace {

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

} // namespace

std::string format_double(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v); // shortest round-trip form
    return std::string(buf, end);
}

IntegratedSample ingest_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw ParseError("missing header", 1);
    ++line_no;
    strip_cr(line);
    if (line != "source_id,entity_id,value")
        throw ParseError("expected header 'source_id,entity_id,value', got '" + line + "'",
                         line_no);

    SampleBuilder builder;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) continue;

        const std::size_t first = line.find(',');
        const std::size_t second = first == std::string::npos ? std::string::npos
                                                              : line.find(',', first + 1);
        if (second == std::string::npos)
            throw ParseError("expected 3 comma-separated fields", line_no);

        Observation obs;
        obs.source_id = line.substr(0, first);
        obs.entity_id = line.substr(first + 1, second - first - 1);
        const std::string value_text = line.substr(second + 1);
        if (obs.source_id.empty() || obs.entity_id.empty())
            throw ParseError("empty source or entity id", line_no);

        const char* begin = value_text.data();
        const char* end = begin + value_text.size();
        auto [ptr, ec] = std::from_chars(begin, end, obs.value);
        if (ec != std::errc{} || ptr != end)
            throw ParseError("malformed value '" + value_text + "'", line_no);

        try {
            builder.add(obs);
        } catch (const Error& e) {
            throw ParseError(std::string(e.what()), line_no);
        }
    }
    return builder.take();
}

IntegratedSample ingest_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return ingest_csv(in);
}

void write_csv(std::ostream& out, const IntegratedSample& sample) {
    out << "source_id,entity_id,value\n";
    for (const Observation& obs : sample.observations())
        out << obs.source_id << ',' << obs.entity_id << ',' << format_double(obs.value) << '\n';
}

} // namespace uu
