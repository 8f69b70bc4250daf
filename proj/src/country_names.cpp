#include "qce/country_names.hpp"

#include <cctype>
#include <unordered_map>
#include <utility>

namespace qce {

namespace {

struct CountryEntry
{
    std::string_view code;
    std::string_view name;
};

// ISO 3166-1 alpha-3 codes with short English names, plus Kosovo (XKX, user-assigned).
constexpr CountryEntry Countries[] = {
    {"AFG", "Afghanistan"},
    {"ALA", "Aland Islands"},
    {"ALB", "Albania"},
    {"DZA", "Algeria"},
    {"ASM", "American Samoa"},
    {"AND", "Andorra"},
    {"AGO", "Angola"},
    {"AIA", "Anguilla"},
    {"ATA", "Antarctica"},
    {"ATG", "Antigua and Barbuda"},
    {"ARG", "Argentina"},
    {"ARM", "Armenia"},
    {"ABW", "Aruba"},
    {"AUS", "Australia"},
    {"AUT", "Austria"},
    {"AZE", "Azerbaijan"},
    {"BHS", "Bahamas"},
    {"BHR", "Bahrain"},
    {"BGD", "Bangladesh"},
    {"BRB", "Barbados"},
    {"BLR", "Belarus"},
    {"BEL", "Belgium"},
    {"BLZ", "Belize"},
    {"BEN", "Benin"},
    {"BMU", "Bermuda"},
    {"BTN", "Bhutan"},
    {"BOL", "Bolivia"},
    {"BES", "Bonaire, Sint Eustatius and Saba"},
    {"BIH", "Bosnia and Herzegovina"},
    {"BWA", "Botswana"},
    {"BVT", "Bouvet Island"},
    {"BRA", "Brazil"},
    {"IOT", "British Indian Ocean Territory"},
    {"BRN", "Brunei"},
    {"BGR", "Bulgaria"},
    {"BFA", "Burkina Faso"},
    {"BDI", "Burundi"},
    {"CPV", "Cabo Verde"},
    {"KHM", "Cambodia"},
    {"CMR", "Cameroon"},
    {"CAN", "Canada"},
    {"CYM", "Cayman Islands"},
    {"CAF", "Central African Republic"},
    {"TCD", "Chad"},
    {"CHL", "Chile"},
    {"CHN", "China"},
    {"CXR", "Christmas Island"},
    {"CCK", "Cocos (Keeling) Islands"},
    {"COL", "Colombia"},
    {"COM", "Comoros"},
    {"COD", "Congo, Democratic Republic"},
    {"COG", "Congo, Republic"},
    {"COK", "Cook Islands"},
    {"CRI", "Costa Rica"},
    {"CIV", "Cote d'Ivoire"},
    {"HRV", "Croatia"},
    {"CUB", "Cuba"},
    {"CUW", "Curacao"},
    {"CYP", "Cyprus"},
    {"CZE", "Czech Republic"},
    {"DNK", "Denmark"},
    {"DJI", "Djibouti"},
    {"DMA", "Dominica"},
    {"DOM", "Dominican Republic"},
    {"ECU", "Ecuador"},
    {"EGY", "Egypt"},
    {"SLV", "El Salvador"},
    {"GNQ", "Equatorial Guinea"},
    {"ERI", "Eritrea"},
    {"EST", "Estonia"},
    {"SWZ", "Eswatini"},
    {"ETH", "Ethiopia"},
    {"FLK", "Falkland Islands"},
    {"FRO", "Faroe Islands"},
    {"FJI", "Fiji"},
    {"FIN", "Finland"},
    {"FRA", "France"},
    {"GUF", "French Guiana"},
    {"PYF", "French Polynesia"},
    {"ATF", "French Southern Territories"},
    {"GAB", "Gabon"},
    {"GMB", "Gambia"},
    {"GEO", "Georgia"},
    {"DEU", "Germany"},
    {"GHA", "Ghana"},
    {"GIB", "Gibraltar"},
    {"GRC", "Greece"},
    {"GRL", "Greenland"},
    {"GRD", "Grenada"},
    {"GLP", "Guadeloupe"},
    {"GUM", "Guam"},
    {"GTM", "Guatemala"},
    {"GGY", "Guernsey"},
    {"GIN", "Guinea"},
    {"GNB", "Guinea-Bissau"},
    {"GUY", "Guyana"},
    {"HTI", "Haiti"},
    {"HMD", "Heard Island and McDonald Islands"},
    {"VAT", "Holy See"},
    {"HND", "Honduras"},
    {"HKG", "Hong Kong"},
    {"HUN", "Hungary"},
    {"ISL", "Iceland"},
    {"IND", "India"},
    {"IDN", "Indonesia"},
    {"IRN", "Iran"},
    {"IRQ", "Iraq"},
    {"IRL", "Ireland"},
    {"IMN", "Isle of Man"},
    {"ISR", "Israel"},
    {"ITA", "Italy"},
    {"JAM", "Jamaica"},
    {"JPN", "Japan"},
    {"JEY", "Jersey"},
    {"JOR", "Jordan"},
    {"KAZ", "Kazakhstan"},
    {"KEN", "Kenya"},
    {"KIR", "Kiribati"},
    {"PRK", "Korea, North"},
    {"KOR", "Korea, South"},
    {"XKX", "Kosovo"},
    {"KWT", "Kuwait"},
    {"KGZ", "Kyrgyzstan"},
    {"LAO", "Laos"},
    {"LVA", "Latvia"},
    {"LBN", "Lebanon"},
    {"LSO", "Lesotho"},
    {"LBR", "Liberia"},
    {"LBY", "Libya"},
    {"LIE", "Liechtenstein"},
    {"LTU", "Lithuania"},
    {"LUX", "Luxembourg"},
    {"MAC", "Macao"},
    {"MDG", "Madagascar"},
    {"MWI", "Malawi"},
    {"MYS", "Malaysia"},
    {"MDV", "Maldives"},
    {"MLI", "Mali"},
    {"MLT", "Malta"},
    {"MHL", "Marshall Islands"},
    {"MTQ", "Martinique"},
    {"MRT", "Mauritania"},
    {"MUS", "Mauritius"},
    {"MYT", "Mayotte"},
    {"MEX", "Mexico"},
    {"FSM", "Micronesia"},
    {"MDA", "Moldova"},
    {"MCO", "Monaco"},
    {"MNG", "Mongolia"},
    {"MNE", "Montenegro"},
    {"MSR", "Montserrat"},
    {"MAR", "Morocco"},
    {"MOZ", "Mozambique"},
    {"MMR", "Myanmar"},
    {"NAM", "Namibia"},
    {"NRU", "Nauru"},
    {"NPL", "Nepal"},
    {"NLD", "Netherlands"},
    {"NCL", "New Caledonia"},
    {"NZL", "New Zealand"},
    {"NIC", "Nicaragua"},
    {"NER", "Niger"},
    {"NGA", "Nigeria"},
    {"NIU", "Niue"},
    {"NFK", "Norfolk Island"},
    {"MKD", "North Macedonia"},
    {"MNP", "Northern Mariana Islands"},
    {"NOR", "Norway"},
    {"OMN", "Oman"},
    {"PAK", "Pakistan"},
    {"PLW", "Palau"},
    {"PSE", "Palestine"},
    {"PAN", "Panama"},
    {"PNG", "Papua New Guinea"},
    {"PRY", "Paraguay"},
    {"PER", "Peru"},
    {"PHL", "Philippines"},
    {"PCN", "Pitcairn"},
    {"POL", "Poland"},
    {"PRT", "Portugal"},
    {"PRI", "Puerto Rico"},
    {"QAT", "Qatar"},
    {"REU", "Reunion"},
    {"ROU", "Romania"},
    {"RUS", "Russia"},
    {"RWA", "Rwanda"},
    {"BLM", "Saint Barthelemy"},
    {"SHN", "Saint Helena"},
    {"KNA", "Saint Kitts and Nevis"},
    {"LCA", "Saint Lucia"},
    {"MAF", "Saint Martin"},
    {"SPM", "Saint Pierre and Miquelon"},
    {"VCT", "Saint Vincent and the Grenadines"},
    {"WSM", "Samoa"},
    {"SMR", "San Marino"},
    {"STP", "Sao Tome and Principe"},
    {"SAU", "Saudi Arabia"},
    {"SEN", "Senegal"},
    {"SRB", "Serbia"},
    {"SYC", "Seychelles"},
    {"SLE", "Sierra Leone"},
    {"SGP", "Singapore"},
    {"SXM", "Sint Maarten"},
    {"SVK", "Slovakia"},
    {"SVN", "Slovenia"},
    {"SLB", "Solomon Islands"},
    {"SOM", "Somalia"},
    {"ZAF", "South Africa"},
    {"SGS", "South Georgia and the South Sandwich Islands"},
    {"SSD", "South Sudan"},
    {"ESP", "Spain"},
    {"LKA", "Sri Lanka"},
    {"SDN", "Sudan"},
    {"SUR", "Suriname"},
    {"SJM", "Svalbard and Jan Mayen"},
    {"SWE", "Sweden"},
    {"CHE", "Switzerland"},
    {"SYR", "Syria"},
    {"TWN", "Taiwan"},
    {"TJK", "Tajikistan"},
    {"TZA", "Tanzania"},
    {"THA", "Thailand"},
    {"TLS", "Timor-Leste"},
    {"TGO", "Togo"},
    {"TKL", "Tokelau"},
    {"TON", "Tonga"},
    {"TTO", "Trinidad and Tobago"},
    {"TUN", "Tunisia"},
    {"TUR", "Turkey"},
    {"TKM", "Turkmenistan"},
    {"TCA", "Turks and Caicos Islands"},
    {"TUV", "Tuvalu"},
    {"UGA", "Uganda"},
    {"UKR", "Ukraine"},
    {"ARE", "United Arab Emirates"},
    {"GBR", "United Kingdom"},
    {"USA", "United States"},
    {"UMI", "United States Minor Outlying Islands"},
    {"URY", "Uruguay"},
    {"UZB", "Uzbekistan"},
    {"VUT", "Vanuatu"},
    {"VEN", "Venezuela"},
    {"VNM", "Vietnam"},
    {"VGB", "Virgin Islands, British"},
    {"VIR", "Virgin Islands, U.S."},
    {"WLF", "Wallis and Futuna"},
    {"ESH", "Western Sahara"},
    {"YEM", "Yemen"},
    {"ZMB", "Zambia"},
    {"ZWE", "Zimbabwe"},
};

// Name forms used by World Bank style datasets, Fraser editions and ISO long names.
constexpr std::pair<std::string_view, std::string_view> Aliases[] = {
    {"Bahamas, The", "BHS"},
    {"The Bahamas", "BHS"},
    {"Brunei Darussalam", "BRN"},
    {"Bolivia (Plurinational State of)", "BOL"},
    {"Cape Verde", "CPV"},
    {"Congo, Dem Rep", "COD"},
    {"Congo, Dem. Rep.", "COD"},
    {"Democratic Republic of the Congo", "COD"},
    {"DR Congo", "COD"},
    {"Congo, Rep", "COG"},
    {"Congo, Rep.", "COG"},
    {"Republic of the Congo", "COG"},
    {"Congo", "COG"},
    {"Cote dIvoire", "CIV"},
    {"Ivory Coast", "CIV"},
    {"Czechia", "CZE"},
    {"Egypt, Arab Rep", "EGY"},
    {"Egypt, Arab Rep.", "EGY"},
    {"Swaziland", "SWZ"},
    {"Gambia, The", "GMB"},
    {"The Gambia", "GMB"},
    {"Hong Kong SAR, China", "HKG"},
    {"Hong Kong SAR", "HKG"},
    {"Hong Kong, China", "HKG"},
    {"Iran, Islamic Rep", "IRN"},
    {"Iran, Islamic Rep.", "IRN"},
    {"Islamic Republic of Iran", "IRN"},
    {"Iran (Islamic Republic of)", "IRN"},
    {"Korea, Rep", "KOR"},
    {"Korea, Rep.", "KOR"},
    {"Republic of Korea", "KOR"},
    {"South Korea", "KOR"},
    {"Korea, Dem. People's Rep.", "PRK"},
    {"North Korea", "PRK"},
    {"Kyrgyz Republic", "KGZ"},
    {"Lao PDR", "LAO"},
    {"Lao People's Democratic Republic", "LAO"},
    {"Macao SAR, China", "MAC"},
    {"Macau", "MAC"},
    {"Macedonia", "MKD"},
    {"Macedonia, FYR", "MKD"},
    {"North Macedonia, Republic of", "MKD"},
    {"Micronesia, Fed. Sts.", "FSM"},
    {"Moldova, Republic of", "MDA"},
    {"Republic of Moldova", "MDA"},
    {"Burma", "MMR"},
    {"Palestinian Territories", "PSE"},
    {"West Bank and Gaza", "PSE"},
    {"Russian Federation", "RUS"},
    {"Slovak Republic", "SVK"},
    {"St. Kitts and Nevis", "KNA"},
    {"St. Lucia", "LCA"},
    {"St. Vincent and the Grenadines", "VCT"},
    {"Syrian Arab Republic", "SYR"},
    {"Taiwan, China", "TWN"},
    {"Taiwan, Province of China", "TWN"},
    {"Tanzania, United Republic of", "TZA"},
    {"United Republic of Tanzania", "TZA"},
    {"East Timor", "TLS"},
    {"Trinidad & Tobago", "TTO"},
    {"Turkiye", "TUR"},
    {"Republic of Turkiye", "TUR"},
    {"UK", "GBR"},
    {"Great Britain", "GBR"},
    {"United Kingdom of Great Britain and Northern Ireland", "GBR"},
    {"USA", "USA"},
    {"US", "USA"},
    {"U.S.", "USA"},
    {"U.S.A.", "USA"},
    {"United States of America", "USA"},
    {"Venezuela, RB", "VEN"},
    {"Venezuela, Bolivarian Republic of", "VEN"},
    {"Viet Nam", "VNM"},
    {"Yemen, Rep", "YEM"},
    {"Yemen, Rep.", "YEM"},
    {"UAE", "ARE"},
    {"Bosnia & Herzegovina", "BIH"},
    {"Bosnia-Herzegovina", "BIH"},
    {"Antigua & Barbuda", "ATG"},
    {"Sao Tome & Principe", "STP"},
    {"Papua-New Guinea", "PNG"},
    {"Guinea Bissau", "GNB"},
    {"Central African Rep.", "CAF"},
    {"Dominican Rep.", "DOM"},
    {"Czech Rep.", "CZE"},
    {"Slovak Rep.", "SVK"},
    {"Holy See (Vatican City State)", "VAT"},
    {"Vatican", "VAT"},
    {"Falkland Islands (Malvinas)", "FLK"},
    {"Reunion Island", "REU"},
    {"Micronesia, Federated States of", "FSM"},
    {"Libyan Arab Jamahiriya", "LBY"},
    {"Republic of Korea (South)", "KOR"},
    {"Kosovo, Republic of", "XKX"},
    {"Korea, South", "KOR"},
    {"Korea, North", "PRK"},
    {"Sudan, North", "SDN"},
    {"Myanmar (Burma)", "MMR"},
    {"Netherlands, The", "NLD"},
    {"The Netherlands", "NLD"},
    {"Cabo Verde, Republic of", "CPV"},
    {"Timor Leste", "TLS"},
    {"Eswatini, Kingdom of", "SWZ"},
    {"Mainland China", "CHN"},
};

// Folds the two-byte UTF-8 Latin-1 supplement letters to ASCII ("ô" -> "o").
char fold_latin1(unsigned char second)
{
    static constexpr std::string_view Folded = "AAAAAAACEEEEIIIIDNOOOOO*OUUUUYTsaaaaaaaceeeeiiiidnooooo/ouuuuyty";
    const unsigned codepoint                 = 0xC0u + (second & 0x3Fu);
    return Folded[codepoint - 0xC0u];
}

const std::unordered_map<std::string, std::string>& name_index()
{
    static const auto index = [] {
        std::unordered_map<std::string, std::string> result;
        for (const auto& entry : Countries) {
            result.emplace(country_name_key(entry.name), std::string(entry.code));
        }
        for (const auto& [alias, code] : Aliases) {
            result.emplace(country_name_key(alias), std::string(code));
        }
        return result;
    }();
    return index;
}

}

bool is_alpha3_code(std::string_view code) noexcept
{
    if (code.size() != 3) {
        return false;
    }
    for (char c : code) {
        if (c < 'A' || c > 'Z') {
            return false;
        }
    }
    return true;
}

std::string country_name_key(std::string_view name)
{
    std::string key;
    key.reserve(name.size());
    for (std::size_t i = 0; i < name.size(); ++i) {
        auto c = static_cast<unsigned char>(name[i]);
        if (c == 0xC3 && i + 1 < name.size()) {
            c = static_cast<unsigned char>(fold_latin1(static_cast<unsigned char>(name[++i])));
        } else if (c == '&') {
            key += "and";
            continue;
        }
        if (std::isalnum(c) && c < 0x80) {
            key.push_back(static_cast<char>(std::tolower(c)));
        }
    }
    return key;
}

std::optional<std::string> builtin_country_code(std::string_view name)
{
    const auto& index = name_index();
    if (auto iter = index.find(country_name_key(name)); iter != index.end()) {
        return iter->second;
    }

    if (is_alpha3_code(name) && builtin_country_name(name)) {
        return std::string(name);
    }
    return std::nullopt;
}

std::optional<std::string> builtin_country_name(std::string_view code)
{
    for (const auto& entry : Countries) {
        if (entry.code == code) {
            return std::string(entry.name);
        }
    }
    return std::nullopt;
}

}
