#include "newsaudit/textfeat/pos_tagger.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

namespace newsaudit::textfeat {

namespace {

std::string lower(const std::string& s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool all_digits_ish(const std::string& s) {
  bool digit = false;
  for (char c : s) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digit = true;
    } else if (c != ',' && c != '.') {
      return false;
    }
  }
  return digit;
}

bool has_digit(const std::string& s) {
  return std::any_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

bool starts_upper(const std::string& s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0])) != 0;
}

bool ends_with(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

using TagMap = std::unordered_map<std::string, const char*>;

const TagMap& closed_class() {
  static const TagMap m = {
      // determiners
      {"the", "DT"}, {"a", "DT"}, {"an", "DT"}, {"this", "DT"}, {"these", "DT"},
      {"those", "DT"}, {"each", "DT"}, {"every", "DT"}, {"either", "DT"},
      {"neither", "DT"}, {"some", "DT"}, {"any", "DT"}, {"no", "DT"}, {"all", "DT"},
      {"both", "DT"}, {"another", "DT"}, {"such", "JJ"},
      // conjunctions
      {"and", "CC"}, {"but", "CC"}, {"or", "CC"}, {"nor", "CC"}, {"plus", "CC"},
      // prepositions / subordinators
      {"in", "IN"}, {"of", "IN"}, {"at", "IN"}, {"on", "IN"}, {"by", "IN"},
      {"for", "IN"}, {"with", "IN"}, {"from", "IN"}, {"about", "IN"},
      {"against", "IN"}, {"between", "IN"}, {"into", "IN"}, {"through", "IN"},
      {"during", "IN"}, {"before", "IN"}, {"after", "IN"}, {"above", "IN"},
      {"below", "IN"}, {"under", "IN"}, {"over", "IN"}, {"once", "RB"},
      {"upon", "IN"}, {"across", "IN"}, {"behind", "IN"}, {"beyond", "IN"},
      {"near", "IN"}, {"since", "IN"}, {"until", "IN"}, {"while", "IN"},
      {"although", "IN"}, {"though", "IN"}, {"because", "IN"}, {"if", "IN"},
      {"unless", "IN"}, {"whereas", "IN"}, {"per", "IN"}, {"amid", "IN"},
      {"among", "IN"}, {"toward", "IN"}, {"towards", "IN"}, {"despite", "IN"},
      {"within", "IN"}, {"without", "IN"}, {"via", "IN"}, {"like", "IN"},
      {"as", "IN"}, {"than", "IN"},
      // modals
      {"can", "MD"}, {"could", "MD"}, {"may", "MD"}, {"might", "MD"},
      {"must", "MD"}, {"shall", "MD"}, {"should", "MD"}, {"will", "MD"},
      {"would", "MD"},
      // pronouns
      {"i", "PRP"}, {"you", "PRP"}, {"he", "PRP"}, {"she", "PRP"}, {"it", "PRP"},
      {"we", "PRP"}, {"they", "PRP"}, {"me", "PRP"}, {"him", "PRP"},
      {"her", "PRP$"}, {"us", "PRP"}, {"them", "PRP"}, {"myself", "PRP"},
      {"yourself", "PRP"}, {"himself", "PRP"}, {"herself", "PRP"},
      {"itself", "PRP"}, {"ourselves", "PRP"}, {"themselves", "PRP"},
      {"mine", "PRP"}, {"yours", "PRP"}, {"hers", "PRP"}, {"ours", "PRP"},
      {"theirs", "PRP"}, {"someone", "NN"}, {"anyone", "NN"}, {"everyone", "NN"},
      {"nobody", "NN"}, {"something", "NN"}, {"anything", "NN"}, {"everything", "NN"},
      {"nothing", "NN"},
      // possessive determiners
      {"my", "PRP$"}, {"your", "PRP$"}, {"his", "PRP$"}, {"its", "PRP$"},
      {"our", "PRP$"}, {"their", "PRP$"},
      // wh-words
      {"which", "WDT"}, {"whatever", "WDT"}, {"whichever", "WDT"},
      {"who", "WP"}, {"whom", "WP"}, {"what", "WP"}, {"whoever", "WP"},
      {"whose", "WP$"},
      {"when", "WRB"}, {"where", "WRB"}, {"why", "WRB"}, {"how", "WRB"},
      {"whenever", "WRB"}, {"wherever", "WRB"},
      // particles and misc adverbs
      {"to", "TO"}, {"not", "RB"}, {"never", "RB"}, {"also", "RB"},
      {"very", "RB"}, {"too", "RB"}, {"quite", "RB"}, {"rather", "RB"},
      {"almost", "RB"}, {"always", "RB"}, {"often", "RB"}, {"sometimes", "RB"},
      {"usually", "RB"}, {"really", "RB"}, {"just", "RB"}, {"still", "RB"},
      {"already", "RB"}, {"again", "RB"}, {"soon", "RB"}, {"now", "RB"},
      {"here", "RB"}, {"then", "RB"}, {"yet", "RB"}, {"instead", "RB"},
      {"perhaps", "RB"}, {"maybe", "RB"}, {"nearly", "RB"}, {"however", "RB"},
      {"even", "RB"}, {"ever", "RB"}, {"away", "RB"}, {"back", "RB"},
      {"together", "RB"}, {"enough", "RB"}, {"well", "RB"}, {"later", "RB"},
      {"ago", "RB"}, {"early", "RB"}, {"far", "RB"}, {"further", "RB"},
      {"more", "JJR"}, {"most", "JJS"}, {"less", "JJR"}, {"least", "JJS"},
      {"better", "JJR"}, {"best", "JJS"}, {"worse", "JJR"}, {"worst", "JJS"},
      // interjections
      {"oh", "UH"}, {"wow", "UH"}, {"hey", "UH"}, {"yes", "UH"},
      // number words
      {"one", "CD"}, {"two", "CD"}, {"three", "CD"}, {"four", "CD"},
      {"five", "CD"}, {"six", "CD"}, {"seven", "CD"}, {"eight", "CD"},
      {"nine", "CD"}, {"ten", "CD"}, {"eleven", "CD"}, {"twelve", "CD"},
      {"dozen", "CD"}, {"twenty", "CD"}, {"thirty", "CD"}, {"forty", "CD"},
      {"fifty", "CD"}, {"sixty", "CD"}, {"hundred", "CD"}, {"thousand", "CD"},
      {"million", "CD"}, {"billion", "CD"},
  };
  return m;
}

const TagMap& verb_forms() {
  static const TagMap m = {
      {"be", "VB"}, {"is", "VBZ"}, {"are", "VBP"}, {"am", "VBP"},
      {"was", "VBD"}, {"were", "VBD"}, {"been", "VBN"}, {"being", "VBG"},
      {"have", "VBP"}, {"has", "VBZ"}, {"had", "VBD"}, {"having", "VBG"},
      {"do", "VBP"}, {"does", "VBZ"}, {"did", "VBD"}, {"done", "VBN"},
      {"doing", "VBG"},
  };
  return m;
}

const TagMap& contractions() {
  static const TagMap m = {
      {"don't", "VBP"}, {"doesn't", "VBZ"}, {"didn't", "VBD"},
      {"can't", "MD"}, {"won't", "MD"}, {"wouldn't", "MD"}, {"couldn't", "MD"},
      {"shouldn't", "MD"}, {"mustn't", "MD"}, {"mightn't", "MD"}, {"cannot", "MD"},
      {"isn't", "VBZ"}, {"aren't", "VBP"}, {"wasn't", "VBD"}, {"weren't", "VBD"},
      {"hasn't", "VBZ"}, {"haven't", "VBP"}, {"hadn't", "VBD"}, {"ain't", "VBP"},
      {"it's", "PRP"}, {"he's", "PRP"}, {"she's", "PRP"}, {"i'm", "PRP"},
      {"you're", "PRP"}, {"we're", "PRP"}, {"they're", "PRP"}, {"i've", "PRP"},
      {"we've", "PRP"}, {"you've", "PRP"}, {"they've", "PRP"}, {"i'll", "PRP"},
      {"he'll", "PRP"}, {"she'll", "PRP"}, {"we'll", "PRP"}, {"you'll", "PRP"},
      {"they'll", "PRP"}, {"i'd", "PRP"}, {"he'd", "PRP"}, {"she'd", "PRP"},
      {"we'd", "PRP"}, {"you'd", "PRP"}, {"they'd", "PRP"}, {"let's", "VB"},
      {"that's", "DT"}, {"there's", "EX"}, {"what's", "WP"}, {"who's", "WP"},
      {"here's", "RB"},
  };
  return m;
}

// Frequent open-class words with their dominant Penn tag.
const TagMap& open_class() {
  static const TagMap m = {
      // irregular and frequent verbs (finite present stored as VBP; the repair
      // pass turns them into VB after modals and "to")
      {"say", "VBP"}, {"says", "VBZ"}, {"said", "VBD"},
      {"make", "VBP"}, {"makes", "VBZ"}, {"made", "VBD"},
      {"go", "VBP"}, {"goes", "VBZ"}, {"went", "VBD"}, {"gone", "VBN"},
      {"take", "VBP"}, {"takes", "VBZ"}, {"took", "VBD"}, {"taken", "VBN"},
      {"come", "VBP"}, {"comes", "VBZ"}, {"came", "VBD"},
      {"see", "VBP"}, {"sees", "VBZ"}, {"saw", "VBD"}, {"seen", "VBN"},
      {"know", "VBP"}, {"knows", "VBZ"}, {"knew", "VBD"}, {"known", "VBN"},
      {"get", "VBP"}, {"gets", "VBZ"}, {"got", "VBD"}, {"gotten", "VBN"},
      {"give", "VBP"}, {"gives", "VBZ"}, {"gave", "VBD"}, {"given", "VBN"},
      {"find", "VBP"}, {"finds", "VBZ"}, {"found", "VBD"},
      {"think", "VBP"}, {"thinks", "VBZ"}, {"thought", "VBD"},
      {"tell", "VBP"}, {"tells", "VBZ"}, {"told", "VBD"},
      {"become", "VBP"}, {"becomes", "VBZ"}, {"became", "VBD"},
      {"show", "VBP"}, {"shows", "VBZ"}, {"showed", "VBD"}, {"shown", "VBN"},
      {"leave", "VBP"}, {"leaves", "VBZ"}, {"left", "VBD"},
      {"feel", "VBP"}, {"feels", "VBZ"}, {"felt", "VBD"},
      {"put", "VBD"}, {"puts", "VBZ"},
      {"bring", "VBP"}, {"brings", "VBZ"}, {"brought", "VBD"},
      {"begin", "VBP"}, {"begins", "VBZ"}, {"began", "VBD"}, {"begun", "VBN"},
      {"keep", "VBP"}, {"keeps", "VBZ"}, {"kept", "VBD"},
      {"hold", "VBP"}, {"holds", "VBZ"}, {"held", "VBD"},
      {"write", "VBP"}, {"writes", "VBZ"}, {"wrote", "VBD"}, {"written", "VBN"},
      {"stand", "VBP"}, {"stands", "VBZ"}, {"stood", "VBD"},
      {"hear", "VBP"}, {"hears", "VBZ"}, {"heard", "VBD"},
      {"let", "VB"}, {"lets", "VBZ"},
      {"mean", "VBP"}, {"means", "VBZ"}, {"meant", "VBD"},
      {"set", "VBD"}, {"sets", "VBZ"},
      {"meet", "VBP"}, {"meets", "VBZ"}, {"met", "VBD"},
      {"run", "VBP"}, {"runs", "VBZ"}, {"ran", "VBD"},
      {"pay", "VBP"}, {"pays", "VBZ"}, {"paid", "VBD"},
      {"sit", "VBP"}, {"sits", "VBZ"}, {"sat", "VBD"},
      {"speak", "VBP"}, {"speaks", "VBZ"}, {"spoke", "VBD"}, {"spoken", "VBN"},
      {"lead", "VBP"}, {"leads", "VBZ"}, {"led", "VBD"},
      {"read", "VBP"}, {"reads", "VBZ"},
      {"grow", "VBP"}, {"grows", "VBZ"}, {"grew", "VBD"}, {"grown", "VBN"},
      {"lose", "VBP"}, {"loses", "VBZ"}, {"lost", "VBD"},
      {"fall", "VBP"}, {"falls", "VBZ"}, {"fell", "VBD"}, {"fallen", "VBN"},
      {"send", "VBP"}, {"sends", "VBZ"}, {"sent", "VBD"},
      {"build", "VBP"}, {"builds", "VBZ"}, {"built", "VBD"},
      {"break", "VBP"}, {"breaks", "VBZ"}, {"broke", "VBD"}, {"broken", "VBN"},
      {"spend", "VBP"}, {"spends", "VBZ"}, {"spent", "VBD"},
      {"rise", "VBP"}, {"rises", "VBZ"}, {"rose", "VBD"}, {"risen", "VBN"},
      {"drive", "VBP"}, {"drives", "VBZ"}, {"drove", "VBD"}, {"driven", "VBN"},
      {"buy", "VBP"}, {"buys", "VBZ"}, {"bought", "VBD"},
      {"wear", "VBP"}, {"wears", "VBZ"}, {"wore", "VBD"}, {"worn", "VBN"},
      {"choose", "VBP"}, {"chooses", "VBZ"}, {"chose", "VBD"}, {"chosen", "VBN"},
      {"win", "VBP"}, {"wins", "VBZ"}, {"won", "VBD"},
      {"cut", "VBD"}, {"cuts", "VBZ"},
      {"want", "VBP"}, {"wants", "VBZ"},
      {"need", "VBP"}, {"needs", "VBZ"},
      {"seem", "VBP"}, {"seems", "VBZ"},
      {"work", "VBP"}, {"works", "VBZ"},
      {"call", "VBP"}, {"calls", "VBZ"},
      {"move", "VBP"}, {"moves", "VBZ"},
      {"live", "VBP"}, {"lives", "VBZ"},
      {"believe", "VBP"}, {"believes", "VBZ"},
      {"happen", "VBP"}, {"happens", "VBZ"},
      {"include", "VBP"}, {"includes", "VBZ"},
      {"continue", "VBP"}, {"continues", "VBZ"},
      {"change", "VBP"}, {"changes", "VBZ"},
      {"follow", "VBP"}, {"follows", "VBZ"},
      {"stop", "VBP"}, {"stops", "VBZ"},
      {"create", "VBP"}, {"creates", "VBZ"},
      {"open", "VBP"}, {"opens", "VBZ"},
      {"offer", "VBP"}, {"offers", "VBZ"},
      {"remember", "VBP"}, {"remembers", "VBZ"},
      {"consider", "VBP"}, {"considers", "VBZ"},
      {"appear", "VBP"}, {"appears", "VBZ"},
      {"serve", "VBP"}, {"serves", "VBZ"},
      {"expect", "VBP"}, {"expects", "VBZ"},
      {"stay", "VBP"}, {"stays", "VBZ"},
      {"reach", "VBP"}, {"reaches", "VBZ"},
      {"remain", "VBP"}, {"remains", "VBZ"},
      {"claim", "VBP"}, {"claims", "VBZ"},
      {"deny", "VBP"}, {"denies", "VBZ"}, {"denied", "VBD"},
      {"announce", "VBP"}, {"announces", "VBZ"},
      {"report", "VBP"}, {"reports", "VBZ"},
      {"confirm", "VBP"}, {"confirms", "VBZ"},
      {"reveal", "VBP"}, {"reveals", "VBZ"},
      {"suggest", "VBP"}, {"suggests", "VBZ"},
      {"insist", "VBP"}, {"insists", "VBZ"},
      {"warn", "VBP"}, {"warns", "VBZ"},
      {"add", "VBP"}, {"adds", "VBZ"},
      {"note", "VBP"}, {"notes", "VBZ"},
      {"explain", "VBP"}, {"explains", "VBZ"},
      {"describe", "VBP"}, {"describes", "VBZ"},
      {"argue", "VBP"}, {"argues", "VBZ"},
      {"declare", "VBP"}, {"declares", "VBZ"},
      {"accuse", "VBP"}, {"accuses", "VBZ"}, {"accused", "VBD"},
      {"vote", "VBP"}, {"votes", "VBZ"},
      {"ask", "VBP"}, {"asks", "VBZ"},
      {"plan", "NN"}, {"plans", "VBZ"},
      {"help", "VB"}, {"helps", "VBZ"},
      {"try", "VB"}, {"tries", "VBZ"}, {"tried", "VBD"},
      {"use", "VB"}, {"uses", "VBZ"}, {"used", "VBD"},
      {"share", "VB"}, {"shares", "NNS"},
      {"face", "VBP"}, {"faces", "VBZ"},
      {"turn", "VBP"}, {"turns", "VBZ"},
      {"start", "VBP"}, {"starts", "VBZ"},
      {"play", "VBP"}, {"plays", "VBZ"},
      // frequent nouns whose form could mislead the suffix rules
      {"news", "NN"}, {"people", "NNS"}, {"children", "NNS"}, {"men", "NNS"},
      {"women", "NNS"}, {"media", "NNS"}, {"police", "NNS"}, {"series", "NN"},
      {"business", "NN"}, {"witness", "NN"}, {"press", "NN"}, {"congress", "NNP"},
      {"analysis", "NN"}, {"crisis", "NN"}, {"basis", "NN"}, {"species", "NNS"},
      {"success", "NN"}, {"access", "NN"}, {"process", "NN"}, {"address", "NN"},
      {"progress", "NN"}, {"focus", "NN"}, {"status", "NN"}, {"bonus", "NN"},
      {"campus", "NN"}, {"virus", "NN"}, {"thing", "NN"}, {"something", "NN"},
      {"morning", "NN"}, {"evening", "NN"}, {"wedding", "NN"}, {"building", "NN"},
      {"meeting", "NN"}, {"feeling", "NN"}, {"being", "VBG"}, {"during", "IN"},
      {"king", "NN"}, {"ring", "NN"}, {"spring", "NN"}, {"string", "NN"},
      {"wing", "NN"}, {"song", "NN"}, {"bed", "NN"}, {"red", "JJ"},
      {"hundred", "CD"}, {"weekend", "NN"}, {"friend", "NN"}, {"fund", "NN"},
      {"wed", "VBD"}, {"shed", "NN"}, {"seed", "NN"}, {"speed", "NN"},
      {"need", "VBP"}, {"feed", "VB"}, {"deed", "NN"}, {"breed", "NN"},
      {"reed", "NN"}, {"creed", "NN"}, {"greed", "NN"}, {"freed", "VBD"},
      {"indeed", "RB"}, {"agreed", "VBD"}, {"proceed", "VB"}, {"exceed", "VB"},
      {"succeed", "VB"},
      // frequent nouns
      {"time", "NN"}, {"year", "NN"}, {"years", "NNS"}, {"day", "NN"},
      {"days", "NNS"}, {"week", "NN"}, {"month", "NN"}, {"world", "NN"},
      {"life", "NN"}, {"home", "NN"}, {"house", "NN"}, {"school", "NN"},
      {"state", "NN"}, {"family", "NN"}, {"group", "NN"}, {"country", "NN"},
      {"problem", "NN"}, {"hand", "NN"}, {"part", "NN"}, {"place", "NN"},
      {"case", "NN"}, {"company", "NN"}, {"system", "NN"}, {"program", "NN"},
      {"question", "NN"}, {"work", "VBP"}, {"number", "NN"}, {"night", "NN"},
      {"point", "NN"}, {"water", "NN"}, {"room", "NN"}, {"mother", "NN"},
      {"father", "NN"}, {"money", "NN"}, {"story", "NN"}, {"fact", "NN"},
      {"eye", "NN"}, {"job", "NN"}, {"word", "NN"}, {"issue", "NN"},
      {"side", "NN"}, {"head", "NN"}, {"service", "NN"}, {"war", "NN"},
      {"history", "NN"}, {"party", "NN"}, {"result", "NN"}, {"reason", "NN"},
      {"research", "NN"}, {"girl", "NN"}, {"guy", "NN"}, {"moment", "NN"},
      {"air", "NN"}, {"teacher", "NN"}, {"force", "NN"}, {"education", "NN"},
      {"foot", "NN"}, {"feet", "NNS"}, {"boy", "NN"}, {"age", "NN"},
      {"city", "NN"}, {"team", "NN"}, {"minute", "NN"}, {"idea", "NN"},
      {"body", "NN"}, {"information", "NN"}, {"name", "NN"}, {"president", "NN"},
      {"source", "NN"}, {"court", "NN"}, {"judge", "NN"}, {"bill", "NN"},
      {"budget", "NN"}, {"economy", "NN"}, {"growth", "NN"}, {"deal", "NN"},
      {"agreement", "NN"}, {"proposal", "NN"}, {"leader", "NN"}, {"minister", "NN"},
      {"senator", "NN"}, {"governor", "NN"}, {"mayor", "NN"}, {"candidate", "NN"},
      {"voter", "NN"}, {"poll", "NN"}, {"interview", "NN"}, {"article", "NN"},
      {"headline", "NN"}, {"rumor", "NN"}, {"scandal", "NN"}, {"celebrity", "NN"},
      {"actor", "NN"}, {"actress", "NN"}, {"singer", "NN"}, {"star", "NN"},
      {"fan", "NN"}, {"divorce", "NN"}, {"baby", "NN"}, {"couple", "NN"},
      {"relationship", "NN"}, {"film", "NN"}, {"movie", "NN"}, {"episode", "NN"},
      {"season", "NN"}, {"music", "NN"}, {"album", "NN"}, {"award", "NN"},
      {"ceremony", "NN"}, {"dress", "NN"}, {"photo", "NN"}, {"picture", "NN"},
      {"video", "NN"}, {"post", "NN"}, {"account", "NN"}, {"website", "NN"},
      {"internet", "NN"}, {"phone", "NN"}, {"message", "NN"}, {"email", "NN"},
      {"letter", "NN"}, {"conference", "NN"}, {"summit", "NN"}, {"speech", "NN"},
      {"crowd", "NN"}, {"protest", "NN"}, {"rally", "NN"}, {"supporter", "NN"},
      {"critic", "NN"}, {"opponent", "NN"}, {"expert", "NN"}, {"analyst", "NN"},
      {"professor", "NN"}, {"scientist", "NN"}, {"doctor", "NN"}, {"hospital", "NN"},
      {"patient", "NN"}, {"disease", "NN"}, {"vaccine", "NN"}, {"treatment", "NN"},
      {"drug", "NN"}, {"bank", "NN"}, {"tax", "NN"}, {"price", "NN"},
      {"cost", "NN"}, {"rate", "NN"}, {"percent", "NN"}, {"stock", "NN"},
      {"investor", "NN"}, {"trade", "NN"}, {"industry", "NN"}, {"factory", "NN"},
      {"worker", "NN"}, {"union", "NN"}, {"salary", "NN"}, {"contract", "NN"},
      {"lawsuit", "NN"}, {"charge", "NN"}, {"trial", "NN"}, {"verdict", "NN"},
      {"sentence", "NN"}, {"prison", "NN"}, {"crime", "NN"}, {"officer", "NN"},
      {"agent", "NN"}, {"evidence", "NN"}, {"victim", "NN"}, {"suspect", "NN"},
      {"attack", "NN"}, {"shooting", "NN"}, {"fire", "NN"}, {"storm", "NN"},
      {"flood", "NN"}, {"earthquake", "NN"}, {"weather", "NN"}, {"climate", "NN"},
      {"energy", "NN"}, {"oil", "NN"}, {"gas", "NN"}, {"power", "NN"},
      {"technology", "NN"}, {"software", "NN"}, {"computer", "NN"}, {"data", "NNS"},
      {"user", "NN"}, {"app", "NN"}, {"device", "NN"}, {"car", "NN"},
      {"vehicle", "NN"}, {"driver", "NN"}, {"road", "NN"}, {"traffic", "NN"},
      {"accident", "NN"}, {"airport", "NN"}, {"flight", "NN"}, {"plane", "NN"},
      {"train", "NN"}, {"station", "NN"}, {"hotel", "NN"}, {"restaurant", "NN"},
      {"food", "NN"}, {"wine", "NN"}, {"dinner", "NN"}, {"lunch", "NN"},
      {"man", "NN"}, {"woman", "NN"}, {"child", "NN"}, {"student", "NN"},
      {"member", "NN"}, {"official", "NN"}, {"spokesman", "NN"},
      {"spokeswoman", "NN"}, {"decision", "NN"}, {"investigation", "NN"},
      {"statement", "NN"}, {"election", "NN"}, {"campaign", "NN"},
      {"government", "NN"}, {"policy", "NN"}, {"market", "NN"}, {"street", "NN"},
      {"office", "NN"}, {"door", "NN"}, {"health", "NN"}, {"person", "NN"},
      {"art", "NN"}, {"line", "NN"}, {"end", "NN"}, {"law", "NN"},
      {"community", "NN"}, {"level", "NN"}, {"game", "NN"}, {"hour", "NN"},
      {"book", "NN"}, {"study", "NN"}, {"lot", "NN"}, {"right", "NN"},
      {"kind", "NN"}, {"friend", "NN"}, {"area", "NN"}, {"way", "NN"},
      {"weekend", "NN"}, {"wife", "NN"}, {"husband", "NN"}, {"daughter", "NN"},
      {"son", "NN"}, {"sister", "NN"}, {"brother", "NN"}, {"fans", "NNS"},
      {"show", "VBP"}, {"tour", "NN"}, {"concert", "NN"}, {"stage", "NN"},
      // frequent adjectives
      {"new", "JJ"}, {"good", "JJ"}, {"high", "JJ"}, {"old", "JJ"},
      {"great", "JJ"}, {"big", "JJ"}, {"small", "JJ"}, {"large", "JJ"},
      {"long", "JJ"}, {"young", "JJ"}, {"different", "JJ"}, {"important", "JJ"},
      {"public", "JJ"}, {"national", "JJ"}, {"political", "JJ"}, {"real", "JJ"},
      {"federal", "JJ"}, {"economic", "JJ"}, {"military", "JJ"}, {"local", "JJ"},
      {"social", "JJ"}, {"strong", "JJ"}, {"free", "JJ"}, {"sure", "JJ"},
      {"low", "JJ"}, {"late", "JJ"}, {"hard", "JJ"}, {"major", "JJ"},
      {"possible", "JJ"}, {"whole", "JJ"}, {"entire", "JJ"}, {"main", "JJ"},
      {"recent", "JJ"}, {"former", "JJ"}, {"top", "JJ"}, {"current", "JJ"},
      {"popular", "JJ"}, {"famous", "JJ"}, {"fake", "JJ"}, {"true", "JJ"},
      {"false", "JJ"}, {"senior", "JJ"}, {"difficult", "JJ"}, {"easy", "JJ"},
      {"only", "RB"}, {"likely", "JJ"}, {"serious", "JJ"}, {"huge", "JJ"},
      {"massive", "JJ"}, {"next", "JJ"}, {"last", "JJ"}, {"first", "JJ"},
      {"second", "JJ"}, {"third", "JJ"}, {"several", "JJ"}, {"many", "JJ"},
      {"few", "JJ"}, {"much", "JJ"}, {"own", "JJ"}, {"same", "JJ"},
      {"other", "JJ"}, {"others", "NNS"}, {"able", "JJ"}, {"close", "JJ"},
      {"happy", "JJ"}, {"proud", "JJ"}, {"angry", "JJ"}, {"clear", "JJ"},
      {"certain", "JJ"}, {"key", "JJ"}, {"safe", "JJ"},
      // frequent adverbs not ending in -ly
      {"today", "NN"}, {"yesterday", "NN"}, {"tomorrow", "NN"},
      {"tonight", "NN"}, {"once", "RB"}, {"twice", "RB"},
  };
  return m;
}

const char* punct_tag(const std::string& tok) {
  char c = tok[0];
  switch (c) {
    case '.': case '!': case '?': return ".";
    case ',': return ",";
    case ';': case ':': case '-': return ":";
    case '(': case '[': case '{': return "(";
    case ')': case ']': case '}': return ")";
    case '"': return "''";
    case '\'': case '`': return "''";
    case '$': return "$";
    case '#': return "#";
    default: return "SYM";
  }
}

bool is_be_or_have(const std::string& low) {
  static const std::unordered_set<std::string> set = {
      "is", "are", "am", "was", "were", "be", "been", "being",
      "has", "have", "had", "having", "isn't", "aren't", "wasn't",
      "weren't", "hasn't", "haven't", "hadn't", "he's", "she's", "it's",
      "i've", "we've", "they've", "you've", "there's", "that's", "who's", "what's"};
  return set.count(low) > 0;
}

// Suffix rules for words not found in any lexicon; returns nullptr when no
// rule fires.
const char* suffix_tag(const std::string& low, bool after_be_or_have) {
  if (ends_with(low, "ly")) return "RB";
  if (low.size() > 4 && ends_with(low, "ing")) return "VBG";
  if (low.size() > 3 && ends_with(low, "ed")) return after_be_or_have ? "VBN" : "VBD";
  for (const char* suf : {"ous", "ful", "ive", "able", "ible", "ic", "ish", "less"})
    if (low.size() > 4 && ends_with(low, suf)) return "JJ";
  if (low.size() > 4 && ends_with(low, "al")) return "JJ";
  for (const char* suf : {"tion", "sion", "ment", "ness", "ity", "ance", "ence",
                          "ship", "hood", "ism", "ist", "ure", "age"})
    if (low.size() > static_cast<std::size_t>(4) && ends_with(low, suf)) return "NN";
  if (low.size() > 3 && ends_with(low, "er")) return "NN";
  if (low.size() > 3 && ends_with(low, "or")) return "NN";
  return nullptr;
}

}  // namespace

const std::vector<std::string>& penn_tagset() {
  static const std::vector<std::string> tags = {
      "CC", "CD", "DT", "EX", "FW", "IN", "JJ", "JJR", "JJS", "LS", "MD",
      "NN", "NNS", "NNP", "NNPS", "PDT", "POS", "PRP", "PRP$", "RB", "RBR",
      "RBS", "RP", "SYM", "TO", "UH", "VB", "VBD", "VBG", "VBN", "VBP",
      "VBZ", "WDT", "WP", "WP$", "WRB", ".", ",", ":", "(", ")", "''", "``",
      "$", "#"};
  return tags;
}

std::vector<std::string> pos_tag(const TokenizedDoc& doc) {
  std::vector<std::string> tags;
  tags.reserve(doc.tokens.size());

  for (const auto& sentence : doc.sentences) {
    std::vector<std::string> stags(sentence.size());
    std::string prev_low;
    bool first_word = true;
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      const std::string& tok = sentence[i];
      if (is_punct_token(tok)) {
        stags[i] = punct_tag(tok);
        continue;
      }
      std::string low = lower(tok);

      const char* tag = nullptr;
      if (all_digits_ish(tok)) {
        tag = "CD";
      } else if (has_digit(tok)) {
        // ordinals like "4th" and mixed alphanumerics like "10am"
        tag = (ends_with(low, "st") || ends_with(low, "nd") || ends_with(low, "rd") ||
               ends_with(low, "th"))
                  ? "JJ"
                  : "CD";
      }
      if (!tag) {
        if (auto it = contractions().find(low); it != contractions().end()) tag = it->second;
      }
      if (!tag && ends_with(low, "'s")) {
        // unsplit possessive: tag by the base word
        std::string base = low.substr(0, low.size() - 2);
        tag = (starts_upper(tok) && !first_word) ? "NNP" : "NN";
        if (auto it = open_class().find(base); it != open_class().end()) {
          const std::string t = it->second;
          if (t == "NN" || t == "NNS") tag = starts_upper(tok) && !first_word ? "NNP" : "NN";
        }
      }
      if (!tag) {
        if (low == "there") {
          // existential before a be-verb, plain adverb otherwise
          std::string next = i + 1 < sentence.size() ? lower(sentence[i + 1]) : "";
          tag = (next == "is" || next == "are" || next == "was" || next == "were" ||
                 next == "will" || next == "would" || next == "'s")
                    ? "EX"
                    : "RB";
        }
      }
      if (!tag) {
        if (auto it = verb_forms().find(low); it != verb_forms().end()) tag = it->second;
      }
      if (!tag) {
        if (auto it = closed_class().find(low); it != closed_class().end()) tag = it->second;
      }
      if (!tag) {
        if (auto it = open_class().find(low); it != open_class().end()) tag = it->second;
      }
      if (!tag && starts_upper(tok) && !first_word) tag = "NNP";
      if (!tag) tag = suffix_tag(low, is_be_or_have(prev_low));
      if (!tag && low.size() > 3 && low.back() == 's' && low[low.size() - 2] != 's' &&
          low[low.size() - 2] != 'u' && low[low.size() - 2] != 'i') {
        tag = "NNS";
      }
      if (!tag) tag = starts_upper(tok) ? "NNP" : "NN";
      stags[i] = tag;
      prev_low = low;
      first_word = false;
    }

    // contextual repairs
    std::string prev_word_low;
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      const std::string low = lower(sentence[i]);
      if (is_punct_token(sentence[i])) continue;
      std::size_t p = i;
      const std::string* prev_tag = nullptr;
      while (p > 0) {
        --p;
        if (!is_punct_token(sentence[p])) {
          prev_tag = &stags[p];
          break;
        }
      }
      std::size_t nx = i + 1;
      while (nx < sentence.size() && is_punct_token(sentence[nx])) ++nx;
      const std::string* next_tag = nx < sentence.size() ? &stags[nx] : nullptr;

      if (prev_tag && (*prev_tag == "MD" || *prev_tag == "TO") &&
          (stags[i] == "VBP" || stags[i] == "VBZ"))
        stags[i] = "VB";
      if (prev_tag && (*prev_tag == "DT" || *prev_tag == "PRP$" || *prev_tag == "JJ") &&
          (stags[i] == "VB" || stags[i] == "VBP"))
        stags[i] = "NN";
      if (prev_tag && stags[i] == "VBD" && !prev_word_low.empty() &&
          is_be_or_have(prev_word_low))
        stags[i] = "VBN";
      if (low == "that") {
        // relative after a noun, determiner before a bare noun, else complementizer
        if (prev_tag && (*prev_tag == "NN" || *prev_tag == "NNS" || *prev_tag == "NNP" ||
                         *prev_tag == "NNPS"))
          stags[i] = "WDT";
        else if (next_tag && (*next_tag == "NN" || *next_tag == "NNS" || *next_tag == "JJ") &&
                 (!prev_tag || prev_tag->front() != 'V'))
          stags[i] = "DT";
        else
          stags[i] = "IN";
      }
      if (!is_punct_token(sentence[i])) prev_word_low = low;
    }

    for (auto& t : stags) tags.push_back(std::move(t));
  }
  return tags;
}

}  // namespace newsaudit::textfeat
