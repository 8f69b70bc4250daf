#include "oracles.hpp"

#include "qce/country_names.hpp"
#include "qce/csv.hpp"
#include "qce/data_ingest.hpp"
#include "qce/error.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

using namespace qce;

namespace {

ParseResult parse(const std::string& text, const ColumnMapping& mapping = ColumnMapping::fraser_default(), const NameOverrides& overrides = {})
{
    std::istringstream in(text);
    return parse_dataset(in, mapping, overrides, "inline");
}

const std::string FraserHeader = "Countries,Year,Regulation,State ownership of Assets,Size of Government\n";

}

TEST(Csv, QuotedFieldsAndLineEndings)
{
    std::istringstream in("\xEF\xBB\xBF" "a,b,c\r\n\"x, y\",\"he said \"\"hi\"\"\",\r\n\"multi\nline\",2,3");
    csv::Reader reader(in);
    std::vector<std::string> f;
    ASSERT_TRUE(reader.next(f));
    EXPECT_EQ(f, (std::vector<std::string>{"a", "b", "c"}));
    ASSERT_TRUE(reader.next(f));
    EXPECT_EQ(f, (std::vector<std::string>{"x, y", "he said \"hi\"", ""}));
    ASSERT_TRUE(reader.next(f));
    EXPECT_EQ(f[0], "multi\nline");
    EXPECT_EQ(reader.record_number(), 3u);
    EXPECT_FALSE(reader.next(f));
}

TEST(Csv, WriteQuotesOnlyWhenNeeded)
{
    std::ostringstream out;
    std::vector<std::string> row{"KOR", "Korea, South", "say \"x\"", "plain"};
    csv::write_row(out, row);
    EXPECT_EQ(out.str(), "KOR,\"Korea, South\",\"say \"\"x\"\"\",plain\n");
}

TEST(Csv, Decimals)
{
    EXPECT_EQ(csv::parse_decimal(" 7.83 "), 7.83);
    EXPECT_EQ(csv::parse_decimal("1,234.5"), 1234.5);
    EXPECT_FALSE(csv::parse_decimal("NA"));
    EXPECT_FALSE(csv::parse_decimal("n/a"));
    EXPECT_FALSE(csv::parse_decimal("-"));
    EXPECT_FALSE(csv::parse_decimal(""));
    EXPECT_FALSE(csv::parse_decimal("7.8x"));
    EXPECT_EQ(csv::parse_integer("2020"), 2020);
    EXPECT_FALSE(csv::parse_integer("20.5"));
}

TEST(CountryNames, VariantsResolveToOneCode)
{
    EXPECT_EQ(normalize_country_name("Korea, Rep."), CountryResolution(std::string("KOR")));
    EXPECT_EQ(normalize_country_name("korea rep"), CountryResolution(std::string("KOR")));
    EXPECT_EQ(normalize_country_name("South Korea"), CountryResolution(std::string("KOR")));
    EXPECT_EQ(normalize_country_name("Côte d'Ivoire"), CountryResolution(std::string("CIV")));
    EXPECT_EQ(normalize_country_name("Cote d'Ivoire"), CountryResolution(std::string("CIV")));
    EXPECT_EQ(normalize_country_name("Hong Kong SAR, China"), CountryResolution(std::string("HKG")));
    EXPECT_EQ(normalize_country_name("Bosnia & Herzegovina"), CountryResolution(std::string("BIH")));
    EXPECT_EQ(normalize_country_name("usa"), CountryResolution(std::string("USA")));
    EXPECT_EQ(normalize_country_name("Atlantis"), CountryResolution(Unresolved{"Atlantis"}));
    EXPECT_EQ(normalize_country_name("Korea"), CountryResolution(Unresolved{"Korea"}));
}

TEST(CountryNames, OverridesComeFirst)
{
    NameOverrides overrides(std::map<std::string, std::string>{{"Atlantis", "ATL"}, {"UK", "GBR"}});
    EXPECT_EQ(normalize_country_name("atlantis", overrides), CountryResolution(std::string("ATL")));
    EXPECT_THROW(NameOverrides(std::map<std::string, std::string>{{"X", "gb"}}), ConfigError);
}

TEST(CountryNames, DatasetCountryListResolvesToDistinctCodes)
{
    std::ifstream in(fixture("dataset_countries.txt"));
    ASSERT_TRUE(in) << fixture("dataset_countries.txt");
    std::set<std::string> codes;
    std::string name;
    int count = 0;
    while (std::getline(in, name)) {
        if (name.empty()) {
            continue;
        }
        ++count;
        auto resolution = normalize_country_name(name);
        const auto* code = std::get_if<std::string>(&resolution);
        ASSERT_NE(code, nullptr) << "unresolved: " << name;
        EXPECT_TRUE(is_alpha3_code(*code));
        EXPECT_TRUE(codes.insert(*code).second) << "duplicate code " << *code << " for " << name;
    }
    EXPECT_EQ(count, 135);
    EXPECT_EQ(codes.size(), 135u);
}

TEST(ParseDataset, FraserColumnsAndMissingCells)
{
    auto result = parse(FraserHeader + "Denmark,2020,8.39,7.01,4.77\n\"Korea, Rep\",2020,7.3,NA,6.6\nAtlantis,2020,1,1,1\nSweden,20x0,1,1,1\n\n");
    EXPECT_EQ(result.panel.size(), 2u);
    EXPECT_EQ(result.panel.complete_count(), 1u);

    const auto* dk = result.panel.find("DNK", 2020);
    ASSERT_NE(dk, nullptr);
    EXPECT_EQ(dk->country_name, "Denmark");
    EXPECT_EQ(*dk->scores, (FoundationVector{8.39, 7.01, 4.77}));

    const auto* kr = result.panel.find("KOR", 2020);
    ASSERT_NE(kr, nullptr);
    EXPECT_FALSE(kr->complete());

    ASSERT_EQ(result.exclusions.size(), 2u);
    EXPECT_EQ(result.exclusions[0].country_id, "SWE");
    EXPECT_NE(result.exclusions[0].reason.find("unparseable year"), std::string::npos);
    EXPECT_EQ(result.exclusions[1].country_id, "Atlantis");
    EXPECT_NE(result.exclusions[1].reason.find("unresolved country name"), std::string::npos);
}

TEST(ParseDataset, UnresolvedNamesAreReportedOnce)
{
    auto result = parse(FraserHeader + "Atlantis,2019,1,1,1\nAtlantis,2020,1,1,1\nAtlantis,2021,1,1,1\n");
    ASSERT_EQ(result.exclusions.size(), 1u);
    EXPECT_EQ(result.exclusions[0].reason, "unresolved country name (3 records from record 2)");

    std::ostringstream report;
    write_exclusion_report(report, result.exclusions);
    EXPECT_EQ(report.str(), "Atlantis: unresolved country name (3 records from record 2)\n");
}

TEST(ParseDataset, MissingColumnIsNamed)
{
    try {
        parse("Countries,Year,Regulation,Size of Government\nDenmark,2020,1,1\n");
        FAIL() << "expected SchemaError";
    } catch (const SchemaError& e) {
        EXPECT_NE(std::string(e.what()).find("State ownership of Assets"), std::string::npos);
    }
}

TEST(ParseDataset, OutOfRangeScoreNamesRecord)
{
    try {
        parse(FraserHeader + "Denmark,2019,8,7,4\nDenmark,2020,8,7,10.5\n");
        FAIL() << "expected RangeError";
    } catch (const RangeError& e) {
        EXPECT_NE(std::string(e.what()).find("Record 3"), std::string::npos);
    }
    EXPECT_THROW(parse(FraserHeader + "Denmark,1900,8,7,4\n"), RangeError);
}

TEST(ParseDataset, DuplicateKeyRejected)
{
    EXPECT_THROW(parse(FraserHeader + "Denmark,2020,8,7,4\nDNK,2020,8,7,4\n"), DuplicateRecordError);
}

TEST(ParseDataset, InversionAndCodeColumn)
{
    ColumnMapping mapping;
    mapping.country_column      = "name";
    mapping.country_code_column = "iso";
    mapping.year_column         = "yr";
    mapping.foundations         = {FoundationColumn{"reg", false}, FoundationColumn{"soe", true}, FoundationColumn{"gov", true}};

    auto result = parse("name,iso,yr,reg,soe,gov\nWhatever,nor,2010,7.5,2.5,4\nNorway,,2011,7,3,4\n", mapping);
    ASSERT_EQ(result.panel.size(), 2u);
    EXPECT_EQ(*result.panel.find("NOR", 2010)->scores, (FoundationVector{7.5, 7.5, 6.0}));
    EXPECT_EQ(result.panel.find("NOR", 2010)->country_name, "Norway");
    EXPECT_EQ(*result.panel.find("NOR", 2011)->scores, (FoundationVector{7.0, 7.0, 6.0}));
}

TEST(ParseDataset, HeaderMatchIsCaseInsensitive)
{
    auto result = parse("countries,YEAR,regulation,state ownership of assets,size of government\nFinland,2020,7.69,6.92,5.17\n");
    EXPECT_EQ(result.panel.complete_count(), 1u);
}

TEST(MappingValidation, BlankAndRepeatedColumns)
{
    auto mapping = ColumnMapping::fraser_default();
    mapping.foundations[2].column = mapping.foundations[0].column;
    EXPECT_THROW(mapping.validate(), ConfigError);
    mapping.foundations[2].column = " ";
    EXPECT_THROW(mapping.validate(), ConfigError);
}

TEST(CanonicalPanel, RoundTripIsLossless)
{
    auto result = parse_dataset_file(fixture("synthetic.csv"), ColumnMapping::fraser_default());
    ASSERT_GT(result.panel.size(), 50u);

    std::ostringstream first;
    write_panel_csv(first, result.panel);
    std::istringstream in(first.str());
    auto reread = read_panel_csv(in);
    EXPECT_EQ(reread, result.panel);

    std::ostringstream second;
    write_panel_csv(second, reread);
    EXPECT_EQ(second.str(), first.str());
}

TEST(CanonicalPanel, MissingFileIsIoError)
{
    EXPECT_THROW(parse_dataset_file("/nonexistent/qce.csv", ColumnMapping::fraser_default()), IoError);
}

TEST(AveragePeriod, WindowAndMinimumYears)
{
    auto result = parse(FraserHeader +
                        "Denmark,1994,1,1,1\nDenmark,1995,2,4,6\nDenmark,2020,4,6,8\nDenmark,2021,9,9,9\n"
                        "Sweden,2000,5,5,5\nSweden,2001,NA,5,5\n");
    auto averaged = average_period(result.panel, PeriodWindow{1995, 2020, 2});
    ASSERT_EQ(averaged.vectors.size(), 1u);
    EXPECT_EQ(averaged.vectors.at("DNK"), (FoundationVector{3, 5, 7}));
    EXPECT_EQ(averaged.names.at("DNK"), "Denmark");
    ASSERT_EQ(averaged.excluded.size(), 1u);
    EXPECT_EQ(averaged.excluded[0], (Exclusion{"SWE", "1 complete records in 1995-2020, minimum 2"}));

    EXPECT_THROW(average_period(CountryPanel{}, PeriodWindow{}), EmptyPanelError);
    EXPECT_THROW(average_period(result.panel, PeriodWindow{2020, 1995, 1}), ConfigError);
    EXPECT_THROW(average_period(result.panel, PeriodWindow{1995, 2020, 0}), ConfigError);
}
