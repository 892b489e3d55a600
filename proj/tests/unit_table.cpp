#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "jcpost/errors.hpp"
#include "jcpost/table.hpp"

namespace {

jcpost::Table sample_table() {
    jcpost::Table t;
    t.meta = {{"tool", "jcpost"}, {"command", "sweep-r"}, {"channels", "absorption,postselect-ground"}};
    t.columns = {"label", "value", "count"};
    t.rows.push_back({std::string("plain"), 0.1, std::int64_t(7)});
    t.rows.push_back({std::string("quote\"comma,"), 3.141592653589793, std::int64_t(-2)});
    t.rows.push_back({std::string("line\nbreak"), std::numeric_limits<double>::quiet_NaN(),
                      std::int64_t(0)});
    return t;
}

double reparse(const std::string& text) { return std::strtod(text.c_str(), nullptr); }

}  // namespace

TEST_CASE("format_double renders shortest exact 17-digit forms") {
    CHECK(jcpost::format_double(1.0) == "1");
    CHECK(jcpost::format_double(0.1) == "0.10000000000000001");
    CHECK(jcpost::format_double(-0.0) == "-0");
    for (double v : {0.1, 1.0 / 3.0, 3.141592653589793, 1e-300, 123456789.123456789}) {
        const std::string text = jcpost::format_double(v);
        CHECK(reparse(text) == v);
    }
    CHECK(jcpost::format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(jcpost::format_double(0.0 / 0.0) == "nan");  // x86 0/0 sets the sign bit
    CHECK(jcpost::format_double(-std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(jcpost::format_double(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("CSV writing quotes exactly the fields that need it") {
    const std::string csv = jcpost::to_csv(sample_table());
    CHECK(csv.find("# tool=jcpost\n") == 0);
    CHECK(csv.find("# channels=absorption,postselect-ground\n") != std::string::npos);
    CHECK(csv.find("label,value,count\n") != std::string::npos);
    CHECK(csv.find("plain,0.10000000000000001,7\n") != std::string::npos);
    CHECK(csv.find("\"quote\"\"comma,\",3.1415926535897931,-2\n") != std::string::npos);
    CHECK(csv.find("\"line\nbreak\",nan,0\n") != std::string::npos);
}

TEST_CASE("CSV parses back with bit-equal doubles") {
    const jcpost::Table original = sample_table();
    const jcpost::Table parsed = jcpost::parse_csv(jcpost::to_csv(original));

    CHECK(parsed.meta == original.meta);
    CHECK(parsed.columns == original.columns);
    REQUIRE(parsed.rows.size() == original.rows.size());

    for (std::size_t i = 0; i < original.rows.size(); ++i) {
        const auto& row = parsed.rows[i];
        REQUIRE(row.size() == 3);
        CHECK(std::get<std::string>(row[0]) == std::get<std::string>(original.rows[i][0]));
        const double value = std::get<double>(original.rows[i][1]);
        const double round_tripped = reparse(std::get<std::string>(row[1]));
        if (std::isnan(value))
            CHECK(std::isnan(round_tripped));
        else
            CHECK(round_tripped == value);
        CHECK(std::stoll(std::get<std::string>(row[2])) ==
              std::get<std::int64_t>(original.rows[i][2]));
    }
}

TEST_CASE("JSON output parses and preserves doubles bit-exactly") {
    const jcpost::Table table = sample_table();
    const nlohmann::json parsed = nlohmann::json::parse(jcpost::to_json(table));

    CHECK(parsed["meta"]["tool"] == "jcpost");
    CHECK(parsed["meta"]["command"] == "sweep-r");
    REQUIRE(parsed["rows"].size() == 3);
    CHECK(parsed["rows"][0]["label"] == "plain");
    CHECK(parsed["rows"][0]["value"].get<double>() == 0.1);
    CHECK(parsed["rows"][0]["count"].get<std::int64_t>() == 7);
    CHECK(parsed["rows"][1]["label"] == "quote\"comma,");
    CHECK(parsed["rows"][1]["value"].get<double>() == 3.141592653589793);
    CHECK(parsed["rows"][2]["label"] == "line\nbreak");
    CHECK(parsed["rows"][2]["value"].is_null());  // NaN maps to null
}

TEST_CASE("empty table still renders valid JSON and CSV") {
    jcpost::Table t;
    t.columns = {"a", "b"};
    const nlohmann::json parsed = nlohmann::json::parse(jcpost::to_json(t));
    CHECK(parsed["rows"].empty());
    CHECK(parsed["meta"].empty());
    CHECK(jcpost::to_csv(t) == "a,b\n");
}

TEST_CASE("write_file failures raise io errors") {
    CHECK_THROWS_AS(jcpost::write_file("/proc/nope/file.csv", "x"), jcpost::io_error);
}
