"""Word lists for the headline treebank generator.

Every entry carries its Penn Treebank tag implicitly through the list it lives
in. Verb and noun inflections are produced by `inflect_*` with the irregular
tables below.
"""

NOUNS = """
accident account actor adventure advice affair age agreement airline airport alert album anatomy
animal anniversary answer app appeal apartment army artist asylum attack attempt attic attorney
audience austerity authority autocorrect avocado award baby backyard bagel bailout ban banana band
bank bankruptcy bath bathroom beach bed bicycle bid bill billionaire bird birth birthday blast
blasphemy boat body bodybuilder bomb bombing book border boss bottle box boy boyfriend bread
breakfast breakup bride bridge brother brotherhood budget bully burger cafe cake camera campaign
candidate capital car carbon career case cat ceasefire celebrity chancellor character charity chef
cheese chief child childhood chocolate cholera church city claim clash cleric cloud co-founder
coalition coast cocaine coffee collapse college color comedian commission company conference
confidence constitution contract control cookie corruption costume country coup couple court cousin
cow crash cream crime crisis crossing crowd crush cup cut cyclone dad dam dance date daughter day deal
death debt decade decision declaration defeat defense delivery dessert detection dictator difference
dinner disaster dispute doctor dog dollar dozen dragon dream dress drink driver drone drought drug
earthquake economy egg election elephant emergency emission emoji emperor employee evacuation event
ex excuse explosion face fact factory fail faith family fan farmer father favour festival field fight
film firefighter fire fish flavor flight flood flooding flower flu food fool force friend frog game
gamer garden gas general genius genocide gift girl girlfriend goat government governor grammar grandma
grandpa grandparent grandson guard guide gun guy gym habit hack hair hat head health heart heatwave
heel hero highway home homecoming homework horror hospital hotel house housewife human humanity
husband ice idea illusion immigration impeachment income independence inquiry interest internet
interview introvert investigation island job joke journalist journey joy judge kid king kiss kitchen
kitten kiwi knife lake landslide language law lawyer leader leak legislature lemon lesson letter level
library life lion loan logo lord lottery love lunch lyric magnitude majority makeover makeup manager
marathon march marijuana market marriage match mayor measure medal mediator meeting member memory
message migrant militant mile mind mine miner minister minute mission mistake model module mom moment
money monkey month morning mosque mother motion mountain movie murder museum music nerd newborn night
nightclub note nurse ocean offence office officer official oil opposition order organization outbreak
owner pact painting pandemic paper parent parenting park parliament party passenger pasta payment peace
percent person personality pet phone photo photographer picture pilgrim pillow pilot pirate pizza place
plan plane planet plant plea poem poet police politician pollution port position post pound power
prank premier president price princess prison prisoner prize probe problem product program prom proof
proposal prosecutor protection protest protester province puppy puzzle question quiz quota quote rabbit
raid rail rain rally rate reaction reason rebel recipe record referendum reform refugee region
relationship release report reserve resignation restaurant result retail review rider right ring river
road robot role room roommate routine rugby rule runner runoff salad sandwich scandal school science
scientist sea search season secret security senator shampoo shape shark shelf ship shirt shoe shooting
shop shortage sibling side sign singer sister sitcom skateboard skill sky slang slaughter sleep
smartphone smile snack snake snow snowfall soda soldier son song soulmate space speaker species speech
spell spirit spy stadium stampede star state station stock storm story stranger street strike struggle
student study summer summit sunset superhero supermarket surprise suspect table talent tanker taste
tattoo tax tea teacher team teen term terrorism test testimony text thing thought threat ticket tie
time timelapse tissue title tobacco toddler toll tonne topping tornado tourist town toy trade tradition
train travel treaty trial trick trip troop truck truth tsunami tweet twin typhoon uncle unemployment
union unity university vacation vaccine victim video village villain violence visa volcano vote voter
waiter war warning water wave way weather wedding week weekend wheelchair wife wildfire wildlife
window winter witch wolf woman work worker world year zodiac
"""

# Mass or otherwise uncountable nouns that should not be pluralised.
MASS_NOUNS = set("""
anatomy austerity asylum autocorrect bankruptcy blasphemy bread breakfast carbon cheese childhood
cholera chocolate cocaine coffee confidence corruption cream dinner emergency evacuation faith flooding
food genocide grammar health homework horror humanity ice immigration impeachment independence
internet joy love lunch makeup marijuana money music oil parenting pasta peace pizza pollution
protection rain retail science security shampoo slang slaughter sleep snow snowfall soda space tea
terrorism tobacco trade travel truth unemployment unity violence water weather wildlife zodiac police
""".split())

IRREGULAR_PLURALS = {
    "child": "children", "man": "men", "woman": "women", "person": "people", "foot": "feet",
    "tooth": "teeth", "mouse": "mice", "wife": "wives", "life": "lives", "knife": "knives",
    "wolf": "wolves", "shelf": "shelves", "thief": "thieves", "leaf": "leaves", "fisherman": "fishermen",
    "gunman": "gunmen", "genius": "geniuses", "species": "species", "crisis": "crises",
    "dozen": "dozens", "goose": "geese", "sheep": "sheep", "fish": "fish", "aircraft": "aircraft",
}

EXTRA_PLURAL_NOUNS = """
arms authorities brides clashes desserts emissions fishermen gunmen hacks lyrics men militants
people police sports tonnes troops women years
"""

# Proper nouns: one token each. Multi-token names are in PROPER_NAMES.
PROPER = """
Afghanistan Africa Algiers Amazon Amy Apple Argentina Arabia Assad Assange Australia Austria Baghdad
Bangladesh Beijing Belarus Blatter Boeing Boston Brazil Brussels Buhari Burundi California Cameron
Chad China Colombia Congress Copenhagen Cuba Cumbria Dalai Desmond Disney Disneyland Djokovic Doritos
Duterte Ebola Ecuador Egypt Erdogan Estonia Ethiopia EU Europe FARC Facebook FIFA Finland Florida
France Francis Friends Fujimori Ghana Google Greece Guantanamo Habre Haiti Halloween Hamas Hermione
Hogwarts Houston IMF India Iran Iraq Ireland Israel Italy Jakarta Japan Jordan Julian Kazakhstan
Kenya Kosovo Kuwait Lama LinkedIn London Lufthansa Lula Macedonia Madrid Malawi Malaysia Mali Mecca
Merkel Mexico Microsoft Mindanao Modi Monday Morales Morsi Moscow Mozambique Mugabe Myanmar NASA
Nemtsov Nepal Netanyahu Netherlands Nigeria Norway Obama Oklahoma Pakistan Panama Paris Peru Peshawar
Philadelphia Philippines Pistorius Pluto Pokemon Potter Punjab Qatar Rafah Ramadi Renzi Rio Ron
Rousseff Russia Rwanda Samsung Sandy Santa Sarkozy Schumer Scotland Senate Serbia Singapore Snapchat
Somalia Spain Starbucks Sudan Swift Switzerland Syria Taliban Tanzania Taylor Tesla Texas Thailand
Tumblr Turkey Twitter UK Uganda Ukraine UN Uruguay US Vatican Venezuela Vietnam Volkswagen Washington
WhatsApp Wikipedia Williams Yemen Zealand Zimbabwe Dumbledore Hollywood Instagram Netflix YouTube
Toronto Berlin Tokyo Sydney Chicago Canada Germany Britain Korea Libya Lebanon Tunisia Cambodia
Mongolia Latvia Senegal Gambia Sweden Denmark Poland Hungary Romania Bulgaria Slovakia Slovenia Chile
Bolivia Armenia Fiji Zambia Iceland Portugal Italy Catalonia Atlantic Pacific Asia Antarctica Olympics
Grey Anatomy Inside Beyonce Kardashian Oprah Trump Clinton Putin Francis Bieber Adele Elsa Marvel Lego
""".split()

PROPER_NAMES = [
    "Harry Potter", "Taylor Swift", "Shane Williams", "Amy Schumer", "Charles Taylor", "New Jersey",
    "New York", "New Zealand", "Hong Kong", "Sri Lanka", "South Africa", "North Korea", "South Korea",
    "South Sudan", "Saudi Arabia", "Puerto Rico", "Ivory Coast", "Fort McMurray", "South Carolina",
    "Rio de Janeiro", "European Union", "United Nations", "World Bank", "Supreme Court", "World Cup",
    "Islamic State", "Air France", "British Airways", "Malaysia Airlines", "Galaxy Note", "Dalai Lama",
    "Julian Assange", "Pope Francis", "Boston Marathon", "Grey 's Anatomy", "Game Of Thrones",
    "Kim Kardashian", "Justin Bieber", "Star Wars", "Donald Trump", "Hillary Clinton", "Vladimir Putin",
    "White House", "Gulf of Mexico", "Middle East", "Federal Reserve", "European Commission",
    "Central Bank", "Nobel Peace Prize", "Paralympic Games", "Summer Olympics", "Panama Papers",
    "Muslim Brotherhood", "Storm Desmond", "Hurricane Sandy", "Liberal Party", "Green Party",
]

ADJECTIVES = """
abandoned absurd addicted adorable afraid amazing angry annual anti-homosexuality anxious armed
awkward bad badass basic beautiful big bizarre black blue brave brief brilliant broken busy calm
central cheap chemical civil classic clean clever cold common complete controversial cool cozy crazy
creepy cruel curly cute daily dangerous dark dead deadly deep different difficult diplomatic dirty
disputed domestic drunk dry early eastern easy economic electric emotional empty entire environmental
epic essential evil excited extra fake famous fancy fat favorite federal female final financial fine
foreign former free fresh friendly full funny general genetic giant glad global golden good gorgeous
grateful great green grieving grumpy guilty gut-wrenching happy hard heartbreaking heavy hidden high
hilarious historic homeless honest hot huge human hungry iconic illegal important incredible inner
innocent insane international judicial key kind large last late legal liberal little local lonely
long loud lucky mad magical main major martial massive medical mental middle mild military minor
modern moral mysterious naked narrow national natural new nice normal northern nuclear obsessed odd
offshore official old open optical ordinary original painful parliamentary perfect personal
plastic poor popular positive possible powerful presidential pretty previous priceless private proud
public pure quiet rare ready real recent red regional relatable related rich ridiculous rival rough
royal rude rural sad safe same same-sex satisfying savage scary secret senior serious severe sexy
short shy sick silly simple single slow small smart social socialist soft solar southern special
spicy stable strange strict strong stunning stupid super-excited supreme sure sweet tall temporary
terrible thick thin tiny tired top tough tropical true typical ugly ultimate underground unreal upset
urban usual viral visible vital warm weak weird western whole wild wise wonderful wrong young
former-soviet nine-year six-year three-day round-the-world saudi-led flood-hit hit-and-run
no-confidence victorian catholic islamic muslim
"""

NATIONALITIES = """
Afghan African American Antarctic Argentine Armenian Asian Australian Belgian Bolivian Brazilian
British Bulgarian Cambodian Canadian Catalan Chadian Chilean Chinese Colombian Cuban Czech Danish
Dutch Egyptian English Ethiopian European Fijian Finnish French Gambian German Greek Hungarian Indian
Indonesian Iraqi Irish Israeli Italian Japanese Kenyan Korean Kurdish Latvian Lebanese Liberian Libyan
Malaysian Mexican Mongolian Palestinian Peruvian Philippine Polish Portuguese Romanian Russian Saudi
Scottish Serbian Slovak Slovenian Somali Spanish Swedish Swiss Syrian Thai Tunisian Turkish Ukrainian
Venezuelan Yemeni Yugoslav Zambian Paralympic
"""

# (positive, comparative, superlative)
GRADABLE = [
    ("good", "better", "best"), ("bad", "worse", "worst"), ("cute", "cuter", "cutest"),
    ("funny", "funnier", "funniest"), ("weird", "weirder", "weirdest"), ("cool", "cooler", "coolest"),
    ("sweet", "sweeter", "sweetest"), ("old", "older", "oldest"), ("low", "lower", "lowest"),
    ("smart", "smarter", "smartest"), ("big", "bigger", "biggest"), ("easy", "easier", "easiest"),
    ("happy", "happier", "happiest"), ("long", "longer", "longest"), ("great", "greater", "greatest"),
    ("large", "larger", "largest"), ("high", "higher", "highest"), ("strange", "stranger", "strangest"),
    ("young", "younger", "youngest"), ("hot", "hotter", "hottest"), ("scary", "scarier", "scariest"),
    ("crazy", "crazier", "craziest"), ("tiny", "tinier", "tiniest"), ("fast", "faster", "fastest"),
    ("rich", "richer", "richest"), ("tall", "taller", "tallest"), ("dumb", "dumber", "dumbest"),
]

ADVERBS = """
absolutely actually again ago almost already also always basically completely definitely easily
especially even ever everywhere exactly finally forever hauntingly honestly incredibly insanely just
later literally miserably nearly never now officially often only perfectly possibly pretty probably
quickly quietly rarely really recently secretly seriously simply slowly so soon still suddenly
surely too totally truly very well worldwide yet together tonight today here there away back
"""

# Irregular verbs: base, 3sg, past, past participle, gerund.
IRREGULAR_VERBS = """
be is was been being
have has had had having
do does did done doing
go goes went gone going
say says said said saying
make makes made made making
get gets got gotten getting
know knows knew known knowing
take takes took taken taking
see sees saw seen seeing
come comes came come coming
think thinks thought thought thinking
give gives gave given giving
find finds found found finding
tell tells told told telling
become becomes became become becoming
leave leaves left left leaving
feel feels felt felt feeling
bring brings brought brought bringing
begin begins began begun beginning
keep keeps kept kept keeping
hold holds held held holding
write writes wrote written writing
stand stands stood stood standing
hear hears heard heard hearing
let lets let let letting
meet meets met met meeting
run runs ran run running
pay pays paid paid paying
sit sits sat sat sitting
speak speaks spoke spoken speaking
lose loses lost lost losing
send sends sent sent sending
build builds built built building
fall falls fell fallen falling
cut cuts cut cut cutting
sell sells sold sold selling
win wins won won winning
eat eats ate eaten eating
drink drinks drank drunk drinking
break breaks broke broken breaking
grow grows grew grown growing
draw draws drew drawn drawing
blow blows blew blown blowing
buy buys bought bought buying
catch catches caught caught catching
teach teaches taught taught teaching
fight fights fought fought fighting
throw throws threw thrown throwing
wear wears wore worn wearing
shoot shoots shot shot shooting
hit hits hit hit hitting
put puts put put putting
rise rises rose risen rising
flee flees fled fled fleeing
sink sinks sank sunk sinking
strike strikes struck struck striking
spread spreads spread spread spreading
seek seeks sought sought seeking
steal steals stole stolen stealing
forget forgets forgot forgotten forgetting
sleep sleeps slept slept sleeping
read reads read read reading
hurt hurts hurt hurt hurting
bet bets bet bet betting
lead leads led led leading
ride rides rode ridden riding
swim swims swam swum swimming
sing sings sang sung singing
uphold upholds upheld upheld upholding
retake retakes retook retaken retaking
freak freaks freaked freaked freaking
spend spends spent spent spending
shut shuts shut shut shutting
"""

REGULAR_VERBS = """
abdicate accept acquire acquit add address admit adopt agree allow amaze annul announce answer
appear appoint appreciate approve argue arrest arrive ask attack award bake ban base beg believe belong
binge block bully call cancel capture care cause celebrate change charge chase cheat check clash clean
clear close collapse collide complete concede conduct confirm convict cook cost crash cry dance decide
declare default delay demand deny derail describe deserve destroy detain die disappear discover dismiss
displace disrupt dress drop elect end endanger enjoy enter erupt escape evacuate execute expect explain
face fail file fine fire flood force freeze grant grin guess hand handle happen hate help hope host hug
hunt identify ignore impeach impose improve injure investigate invite jail join jump kill kiss knock
land last laugh launch learn legalize like limit link listen live look love mark march marry match
matter melt miss move nail name need offer open order pass peel plan play post postpone prank prefer
prepare prompt propose protest prove pull push raise rank reach realize recall recede receive
recognize recover recreate refuse reject relate release remember remove reopen replace report rescue
resign resolve respond restore return reveal ruin rule save scream search seize sentence serve share
shave shop sign slam smile solve spot stare start stay stop storm struggle study sum suspend support
survive talk taste test text thank threaten transform travel try turn unveil urge use veto visit vote
wait wake walk want warn wash watch wax welcome wish wonder work worry
"""

# Verbs whose base form doubles the final consonant in -ed/-ing.
DOUBLING = set("ban beg grin plan shop slam spot stop sum hug drop admit acquit prefer".split())

NUMBER_WORDS = "one two three four five six seven eight nine ten dozens hundreds thousands".split()


def plural(noun):
    if noun in IRREGULAR_PLURALS:
        return IRREGULAR_PLURALS[noun]
    if noun.endswith(("s", "x", "z", "ch", "sh")):
        return noun + "es"
    if noun.endswith("y") and noun[-2] not in "aeiou":
        return noun[:-1] + "ies"
    return noun + "s"


def _regular_forms(base):
    if base.endswith("ie"):
        past, ing = base + "d", base[:-2] + "ying"
    elif base.endswith("e"):
        past, ing = base + "d", base[:-1] + "ing"
        if base.endswith(("ee", "ye", "oe")):
            ing = base + "ing"
    elif base.endswith("y") and base[-2] not in "aeiou":
        past, ing = base[:-1] + "ied", base + "ing"
    elif base in DOUBLING:
        past, ing = base + base[-1] + "ed", base + base[-1] + "ing"
    else:
        past, ing = base + "ed", base + "ing"
    if base.endswith(("s", "x", "z", "ch", "sh", "o")):
        third = base + "es"
    elif base.endswith("y") and base[-2] not in "aeiou":
        third = base[:-1] + "ies"
    else:
        third = base + "s"
    return base, third, past, past, ing


def verb_table():
    table = {}
    for line in IRREGULAR_VERBS.strip().splitlines():
        parts = line.split()
        table[parts[0]] = tuple(parts)
    for base in REGULAR_VERBS.split():
        table.setdefault(base, _regular_forms(base))
    return table


def nouns():
    singular = sorted(set(NOUNS.split()))
    pairs = []
    for n in singular:
        pairs.append((n, None if n in MASS_NOUNS else plural(n)))
    return pairs
