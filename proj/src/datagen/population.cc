// Copyright 2026 The PPRL-CBF Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pprl/datagen/population.h"

#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <tuple>

#include "pprl/common/error.h"

namespace pprl {

namespace {

constexpr const char* kFirstNames[] = {
      "james", "mary", "robert", "patricia", "john", "jennifer", "michael",
      "linda", "david", "elizabeth", "william", "barbara", "richard", "susan",
      "joseph", "jessica", "thomas", "sarah", "christopher", "karen",
      "charles", "lisa", "daniel", "nancy", "matthew", "betty", "anthony",
      "sandra", "mark", "margaret", "donald", "ashley", "steven", "kimberly",
      "andrew", "emily", "paul", "donna", "joshua", "michelle", "kenneth",
      "carol", "kevin", "amanda", "brian", "melissa", "george", "deborah",
      "timothy", "stephanie", "ronald", "dorothy", "jason", "rebecca",
      "edward", "sharon", "jeffrey", "laura", "ryan", "cynthia", "jacob",
      "amy", "gary", "kathleen", "nicholas", "angela", "eric", "shirley",
      "jonathan", "brenda", "stephen", "emma", "larry", "anna", "justin",
      "pamela", "scott", "nicole", "brandon", "samantha", "benjamin",
      "katherine", "samuel", "christine", "gregory", "helen", "alexander",
      "debra", "patrick", "rachel", "frank", "carolyn", "raymond", "janet",
      "jack", "maria", "dennis", "catherine", "jerry", "heather", "tyler",
      "diane", "aaron", "olivia", "jose", "julie", "adam", "joyce", "nathan",
      "victoria", "henry", "ruth", "zachary", "virginia", "douglas", "lauren",
      "peter", "kelly", "kyle", "christina", "noah", "joan", "ethan", "evelyn",
      "jeremy", "judith", "christian", "andrea", "walter", "hannah", "keith",
      "megan", "austin", "cheryl", "roger", "jacqueline", "terry", "martha",
      "sean", "madison", "gerald", "teresa", "carl", "gloria", "dylan", "sara",
      "harold", "janice", "jordan", "ann", "jesse", "kathryn", "bryan",
      "abigail", "lawrence", "sophia", "arthur", "frances", "gabriel", "jean",
      "bruce", "alice", "logan", "judy", "billy", "isabella", "joe", "julia",
      "alan", "grace", "juan", "amber", "elijah", "denise", "willie",
      "danielle", "albert", "marilyn", "wayne", "beverly", "randy",
      "charlotte", "mason", "natalie", "vincent", "theresa", "liam", "diana",
      "roy", "brittany", "bobby", "doris", "caleb", "kayla", "bradley",
      "alexis", "russell", "lori", "lucas", "marie", "quentin", "yvonne",
      "xavier", "ursula", "ignatius", "wilhelmina", "ophelia", "barnaby",
      "cornelius", "philippa", "leopold", "rosalind", "octavia", "thaddeus",
      "genevieve", "ezekiel", "clementine", "augustus", "seraphina", "ambrose",
      "evangeline", "bartholomew", "priscilla", "desmond", "lucinda",
      "fitzgerald", "marigold", "horatio", "winifred", "lysander", "imogen",
      "percival", "millicent"};

constexpr const char* kLastNames[] = {
      "smith", "johnson", "williams", "brown", "jones", "garcia", "miller",
      "davis", "rodriguez", "martinez", "hernandez", "lopez", "gonzalez",
      "wilson", "anderson", "thomas", "taylor", "moore", "jackson", "martin",
      "lee", "perez", "thompson", "white", "harris", "sanchez", "clark",
      "ramirez", "lewis", "robinson", "walker", "young", "allen", "king",
      "wright", "scott", "torres", "nguyen", "hill", "flores", "green",
      "adams", "nelson", "baker", "hall", "rivera", "campbell", "mitchell",
      "carter", "roberts", "gomez", "phillips", "evans", "turner", "diaz",
      "parker", "cruz", "edwards", "collins", "reyes", "stewart", "morris",
      "morales", "murphy", "cook", "rogers", "gutierrez", "ortiz", "morgan",
      "cooper", "peterson", "bailey", "reed", "kelly", "howard", "ramos",
      "kim", "cox", "ward", "richardson", "watson", "brooks", "chavez", "wood",
      "james", "bennett", "gray", "mendoza", "ruiz", "hughes", "price",
      "alvarez", "castillo", "sanders", "patel", "myers", "long", "ross",
      "foster", "jimenez", "powell", "jenkins", "perry", "russell", "sullivan",
      "bell", "coleman", "butler", "henderson", "barnes", "gonzales", "fisher",
      "vasquez", "simmons", "romero", "jordan", "patterson", "alexander",
      "hamilton", "graham", "reynolds", "griffin", "wallace", "moreno", "west",
      "cole", "hayes", "bryant", "herrera", "gibson", "ellis", "tran",
      "medina", "aguilar", "stevens", "murray", "ford", "castro", "marshall",
      "owens", "harrison", "fernandez", "mcdonald", "woods", "washington",
      "kennedy", "wells", "vargas", "henry", "chen", "freeman", "webb",
      "tucker", "guzman", "burns", "crawford", "olson", "simpson", "porter",
      "hunter", "gordon", "mendez", "silva", "shaw", "snyder", "mason",
      "dixon", "munoz", "hunt", "hicks", "holmes", "palmer", "wagner", "black",
      "robertson", "boyd", "rose", "stone", "salazar", "fox", "warren",
      "mills", "meyer", "rice", "schmidt", "garza", "daniels", "ferguson",
      "nichols", "stephens", "soto", "weaver", "ryan", "gardner", "payne",
      "grant", "dunn", "kelley", "spencer", "hawkins", "arnold", "pierce",
      "vazquez", "hansen", "peters", "santos", "hart", "bradley", "knight",
      "elliott", "cunningham", "duncan", "armstrong", "hudson", "carroll",
      "lane", "riley", "andrews", "alvarado", "ray", "delgado", "berry",
      "perkins", "hoffman", "johnston", "matthews", "pena", "richards",
      "contreras", "willis", "carpenter", "lawrence", "sandoval"};

constexpr const char* kSurnamePrefixes[] = {
      "ab", "al", "ash", "bar", "bel", "bla", "bran", "bro", "cal", "car",
      "chad", "col", "cor", "dal", "dar", "dun", "el", "fair", "fal", "far",
      "gal", "gar", "gil", "glen", "hal", "har", "hol", "kel", "kin", "lan",
      "lin", "mal", "mar", "mel", "mor", "nor", "oak", "pem", "pen", "quin",
      "ran", "red", "ros", "sal", "shel", "sten", "tal", "thorn", "tor", "val",
      "van", "war", "wes", "wil", "win", "york", "zan"};

constexpr const char* kSurnameSuffixes[] = {
      "bury", "by", "combe", "croft", "dale", "den", "don", "field", "ford",
      "gate", "ham", "holt", "hurst", "ington", "land", "ley", "low", "mere",
      "mont", "more", "ridge", "shaw", "stead", "ston", "thorpe", "ton",
      "vale", "well", "wick", "win", "wood", "worth"};

constexpr const char* kCities[] = {
      "charlotte", "raleigh", "greensboro", "durham", "winston salem",
      "fayetteville", "cary", "wilmington", "high point", "concord",
      "asheville", "greenville", "gastonia", "jacksonville", "chapel hill",
      "huntersville", "apex", "burlington", "rocky mount", "kannapolis",
      "wake forest", "mooresville", "hickory", "indian trail", "holly springs",
      "monroe", "salisbury", "goldsboro", "cornelius", "garner", "new bern",
      "sanford", "matthews", "statesville", "thomasville", "kernersville",
      "mint hill", "asheboro", "fuquay varina", "clayton", "kinston", "shelby",
      "knightdale", "lumberton", "mebane", "harrisburg", "clemmons",
      "carrboro", "boone", "hendersonville", "elizabeth city", "lenoir",
      "havelock", "morrisville", "roanoke rapids", "albemarle", "graham",
      "laurinburg", "lexington", "reidsville", "smithfield", "waxhaw",
      "henderson", "wilson", "southern pines", "pinehurst", "archdale", "eden",
      "tarboro", "davidson", "lincolnton", "stallings", "hope mills", "newton",
      "kings mountain", "morganton", "spring lake", "mount holly", "belmont",
      "clinton", "roxboro", "waynesville", "oxford", "dunn", "wendell",
      "winterville", "siler city", "cherryville", "marion", "forest city",
      "brevard", "black mountain", "sylva", "murphy", "manteo", "nags head",
      "ahoskie", "edenton", "plymouth", "washington", "williamston", "windsor",
      "hertford", "elkin", "mount airy", "pilot mountain", "yadkinville",
      "wilkesboro", "sparta", "jefferson", "west jefferson", "banner elk",
      "newland", "burnsville", "spruce pine", "bakersville", "hayesville",
      "robbinsville", "bryson city", "franklin", "highlands", "cashiers"};

std::discrete_distribution<std::size_t> zipf(std::size_t n, double exponent) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = 1.0 / std::pow(static_cast<double>(i + 1), exponent);
  return {w.begin(), w.end()};
}

PopulationTables make_builtin() {
  PopulationTables t;
  for (const char* s : kFirstNames) t.first_names.emplace_back(s);
  for (const char* s : kLastNames) t.last_names.emplace_back(s);
  // Compound surnames extend the vocabulary so large populations stay distinct.
  for (const char* p : kSurnamePrefixes) {
    for (const char* s : kSurnameSuffixes) t.last_names.push_back(std::string(p) + s);
  }
  for (const char* s : kCities) t.cities.emplace_back(s);
  return t;
}

}  // namespace

const PopulationTables& PopulationTables::builtin() {
  static const PopulationTables tables = make_builtin();
  return tables;
}

std::vector<Record> sample_population(std::size_t count, std::uint64_t seed,
                                      const PopulationTables& tables) {
  if (tables.first_names.empty() || tables.last_names.empty() || tables.cities.empty()) {
    throw InvalidArgument("population tables must not be empty");
  }
  std::mt19937_64 rng(seed);
  auto first = zipf(tables.first_names.size(), tables.exponent);
  auto last = zipf(tables.last_names.size(), tables.exponent);
  auto city = zipf(tables.cities.size(), tables.exponent);
  std::uniform_int_distribution<int> zip_offset(0, 14);

  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> used;
  std::vector<Record> out;
  out.reserve(count);
  const std::size_t max_attempts = 50 * count + 1000;
  for (std::size_t attempt = 0; out.size() < count; ++attempt) {
    if (attempt == max_attempts) {
      throw InvalidArgument("population tables too small for " + std::to_string(count) +
                            " distinct people");
    }
    const std::size_t f = first(rng);
    const std::size_t l = last(rng);
    const std::size_t c = city(rng);
    if (!used.emplace(f, l, c).second) continue;
    char id[16];
    std::snprintf(id, sizeof(id), "E%07zu", out.size());
    const int zip = 27000 + static_cast<int>(c) * 15 + zip_offset(rng);
    out.push_back({id, {tables.first_names[f], tables.last_names[l], tables.cities[c],
                        std::to_string(zip)}});
  }
  return out;
}

}  // namespace pprl
