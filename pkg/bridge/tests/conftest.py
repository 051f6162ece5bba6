import pytest

CORPUS = {
    "s01.txt": """\
#speaker-id: s01
[00:00:00]
INT: Vertelt u eens over vroeger?
SPK: Ik ben geboren in een klein huis ... bij de rivier.
[00:01:30]
SPK: Mijn vader was- eh, hij werkte op het land.
SPK: Wij hadden drie koeien en een paard.
[00:05:00]
SPK: Dat was alles.
""",
    "s02.txt": """\
#speaker-id: s02
[00:00:10]
SPK: Vroeger gingen wij elke zondag naar de kerk.
INT: Elke zondag?
[00:02:00]
SPK: Ja ... elke zondag, en daarna --- koffie bij mijn moeder.
""",
    "s03.txt": """\
#speaker-id: s03
[00:00:00]
SPK: Het huis stond aan de rand van het dorp.
[00:03:00]
SPK: In de winter was het koud, heel koud...
SPK: Wij sliepen met drie kinderen in een bed.
""",
}

LEXICON = """\
# surface, UPOS, lemma
vertelt\tVERB\tvertellen
u\tPRON\tu
eens\tADV\teens
over\tADP\tover
vroeger\tADV\tvroeger
ik\tPRON\tik
ben\tAUX\tzijn
geboren\tVERB\tgeboren
in\tADP\tin
een\tDET\teen
klein\tADJ\tklein
huis\tNOUN\thuis
bij\tADP\tbij
de\tDET\tde
rivier\tNOUN\trivier
mijn\tPRON\tmijn
vader\tNOUN\tvader
was\tAUX\tzijn
eh\tINTJ\teh
hij\tPRON\thij
werkte\tVERB\twerken
op\tADP\top
het\tDET\thet
land\tNOUN\tland
wij\tPRON\twij
hadden\tVERB\thebben
drie\tNUM\tdrie
koeien\tNOUN\tkoe
en\tCCONJ\ten
paard\tNOUN\tpaard
dat\tPRON\tdat
alles\tPRON\talles
gingen\tVERB\tgaan
elke\tDET\telk
zondag\tNOUN\tzondag
naar\tADP\tnaar
kerk\tNOUN\tkerk
ja\tINTJ\tja
daarna\tADV\tdaarna
koffie\tNOUN\tkoffie
moeder\tNOUN\tmoeder
stond\tVERB\tstaan
aan\tADP\taan
rand\tNOUN\trand
van\tADP\tvan
dorp\tNOUN\tdorp
winter\tNOUN\twinter
koud\tADJ\tkoud
heel\tADV\theel
sliepen\tVERB\tslapen
met\tADP\tmet
kinderen\tNOUN\tkind
bed\tNOUN\tbed
"""


@pytest.fixture(scope="session")
def corpus_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("corpus")
    for name, text in CORPUS.items():
        (d / name).write_text(text, encoding="utf-8")
    (d / "words.tsv").write_text(LEXICON, encoding="utf-8")
    return d


@pytest.fixture(scope="session")
def lexicon_model(corpus_dir):
    return f"lexicon:{corpus_dir / 'words.tsv'}"
