#include "gvgrg/fixtures.hpp"

#include <cctype>
#include <map>
#include <mutex>
#include <stdexcept>

namespace gvgrg {

namespace {

const char* const kAliensGame = R"(BasicGame
    SpriteSet
        base > Immovable
        avatar > FlakAvatar stype=sam limit=1
        sam > Missile orientation=UP
        bomb > Missile orientation=DOWN speed=0.5
        alien > Bomber stype=bomb prob=0.01 cooldown=3 orientation=RIGHT
        portal > SpawnPoint stype=alien cooldown=16 total=12 prob=1
    LevelMapping
        0 > base
        A > avatar
        1 > portal
    InteractionSet
        avatar EOS > stepBack
        alien EOS > turnAround
        sam EOS > killSprite
        bomb EOS > killSprite
        base bomb > killBoth
        base sam > killBoth scoreChange=1
        base alien > killSprite
        avatar alien > killSprite scoreChange=-1
        avatar bomb > killSprite scoreChange=-1
        alien sam > killSprite scoreChange=2
    TerminationSet
        SpriteCounter stype=avatar limit=0 win=False
        MultiSpriteCounter stype1=portal stype2=alien limit=0 win=True
)";

const char* const kAliensLevel[] = {
    "1                   ",
    "                    ",
    "                    ",
    "                    ",
    "                    ",
    "                    ",
    "                    ",
    "  000    000   000  ",
    "  0 0    000   0 0  ",
    "                    ",
    "         A          ",
};

const char* const kBoulderdashGame = R"(BasicGame
    SpriteSet
        wall > Immovable
        dirt > Immovable
        exitdoor > Door
        diamond > Resource limit=10
        boulder > Missile orientation=DOWN cooldown=5
        avatar > ShootAvatar stype=sword limit=1
        sword > Missile
        crab > Chaser stype=avatar cooldown=5
        butterfly > RandomNPC cooldown=3
    LevelMapping
        w > wall
        . > dirt
        e > exitdoor
        x > diamond
        o > boulder
        A > avatar
        c > crab
        b > butterfly
    InteractionSet
        avatar wall > stepBack
        avatar boulder > stepBack
        boulder wall > stepBack
        boulder dirt > stepBack
        boulder diamond > stepBack
        boulder boulder > stepBack
        boulder exitdoor > stepBack
        crab wall > stepBack
        crab dirt > stepBack
        crab boulder > stepBack
        crab diamond > stepBack
        crab exitdoor > stepBack
        butterfly wall > stepBack
        butterfly dirt > stepBack
        butterfly boulder > stepBack
        butterfly diamond > stepBack
        butterfly exitdoor > stepBack
        avatar boulder > killSprite scoreChange=-1
        avatar crab > killSprite scoreChange=-1
        avatar butterfly > killSprite scoreChange=-1
        dirt avatar > killSprite
        dirt sword > killSprite
        sword dirt > killSprite
        sword wall > killSprite
        sword EOS > killSprite
        crab sword > killSprite scoreChange=1
        butterfly crab > transformTo stype=diamond scoreChange=1
        crab butterfly > killSprite
        diamond avatar > collectResource scoreChange=2
        exitdoor avatar > killSprite
    TerminationSet
        SpriteCounter stype=avatar limit=0 win=False
        SpriteCounter stype=exitdoor limit=0 win=True
)";

const char* const kBoulderdashLevel[] = {
    "wwwwwwwwwwwwwwwwwwwwww",
    "w...o....x.....o....ew",
    "w.A......o..........xw",
    "w.....x.......ww.....w",
    "w...  ..o...b.....o..w",
    "w..x...........  .x..w",
    "w.....ww...x.........w",
    "w..o.......    ...c..w",
    "w....x.......o.......w",
    "w..b.....o......x....w",
    "wwwwwwwwwwwwwwwwwwwwww",
};

const char* const kSolarfoxGame = R"(BasicGame
    SpriteSet
        wall > Immovable
        blib > Passive
        avatar > OngoingAvatar cooldown=2
        upshot > Missile orientation=UP cooldown=2
        downshot > Missile orientation=DOWN cooldown=2
        topenemy > Bomber stype=downshot prob=0.05 cooldown=2 orientation=RIGHT
        bottomenemy > Bomber stype=upshot prob=0.05 cooldown=2 orientation=LEFT
    LevelMapping
        w > wall
        b > blib
        A > avatar
        t > topenemy
        u > bottomenemy
    InteractionSet
        avatar EOS > stepBack
        avatar wall > stepBack
        blib avatar > killSprite scoreChange=1
        avatar downshot > killSprite scoreChange=-1
        avatar upshot > killSprite scoreChange=-1
        downshot EOS > killSprite
        upshot EOS > killSprite
        downshot wall > killSprite
        upshot wall > killSprite
        topenemy EOS > reverseDirection
        bottomenemy EOS > reverseDirection
    TerminationSet
        SpriteCounter stype=avatar limit=0 win=False
        SpriteCounter stype=blib limit=0 win=True
)";

const char* const kSolarfoxLevel[] = {
    "t           ",
    "            ",
    "  b  b  b   ",
    "  w  w  w b ",
    "  b     b   ",
    "     A      ",
    "  b  w  b   ",
    "  w     w b ",
    "  b  b  b   ",
    "           u",
};

template <std::size_t N>
std::string join_rows(const char* const (&rows)[N])
{
  std::string out;
  for (const char* row : rows) {
    out += row;
    out += '\n';
  }
  return out;
}

Fixture build(std::string name, const char* game_text, std::string level_text)
{
  Fixture f;
  f.name = std::move(name);
  f.game_text = game_text;
  f.level_text = std::move(level_text);
  f.game = parse_game(f.game_text);
  f.level = parse_level(f.level_text, f.game.mapping);
  return f;
}

const std::map<std::string, Fixture>& catalog()
{
  static const std::map<std::string, Fixture> fixtures = [] {
    std::map<std::string, Fixture> m;
    m.emplace("aliens", build("aliens", kAliensGame, join_rows(kAliensLevel)));
    m.emplace("boulderdash", build("boulderdash", kBoulderdashGame, join_rows(kBoulderdashLevel)));
    m.emplace("solarfox", build("solarfox", kSolarfoxGame, join_rows(kSolarfoxLevel)));
    return m;
  }();
  return fixtures;
}

} // namespace

const std::vector<std::string>& fixture_names()
{
  static const std::vector<std::string> names = {"aliens", "boulderdash", "solarfox"};
  return names;
}

const Fixture& fixture(std::string_view name)
{
  std::string key(name);
  for (auto& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  const auto& m = catalog();
  auto it = m.find(key);
  if (it == m.end()) throw std::invalid_argument("unknown fixture game '" + std::string(name) + "'");
  return it->second;
}

} // namespace gvgrg
