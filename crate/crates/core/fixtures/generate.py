#!/usr/bin/env python3
"""Regenerates the fixture corpus: two small dumps, the dictionary, the
planted gold, the pathology pair, the tagging gold and the judgment files.

Run from anywhere; files are written next to this script.
"""

from pathlib import Path
from xml.sax.saxutils import escape

HERE = Path(__file__).resolve().parent

# Each topic: (ja title, es title, ja sentences, es sentences, gold pairs).
# Gold pairs are (ja sentence index, es sentence index) of literal
# translations. Everything else is a partial-overlap or unrelated sentence.
TOPICS = [
    (
        "東京", "Tokio",
        [
            "[[東京]]は[[日本]]の首都です。",
            "東京には古い寺があります。",
            "東京の夏は雨の季節です。",
            "川の近くに大きい公園があります。",
        ],
        [
            "Tokio es la capital de [[Japón]].",
            "Tokio tiene muchos restaurantes famosos.",
            "En Tokio hay un templo antiguo.",
            "El parque tiene un lago y muchos árboles.",
        ],
        [(0, 0), (1, 2)],
    ),
    (
        "富士山", "Monte Fuji",
        [
            "[[富士山]]は日本の高い山です。",
            "富士山は[[静岡県]]と[[山梨県]]にあります。",
            "冬には山の頂上が白いです。",
            "富士山は多くの画家が描いた山です。",
        ],
        [
            "El Monte Fuji es una montaña alta de [[Japón]].",
            "El Monte Fuji está en [[Shizuoka]] y [[Yamanashi]].",
            "El Monte Fuji aparece en muchas pinturas.",
            "En invierno la cima de la montaña es blanca.",
        ],
        [(0, 0), (1, 1), (2, 3)],
    ),
    (
        "犬", "Perro",
        [
            "[[犬]]は人間の友達です。",
            "この犬はとても小さいです。",
            "犬は水をのみます。",
            "犬の祖先は狼です。",
        ],
        [
            "El [[perro]] es el amigo del hombre.",
            "Este perro es muy pequeño.",
            "Muchas familias tienen un perro en casa.",
            "El perro bebe agua.",
        ],
        [(0, 0), (1, 1), (2, 3)],
    ),
    (
        "猫", "Gato",
        [
            "[[猫]]は小さい動物です。",
            "猫は魚を食べます。",
            "猫の名前はタマです。",
        ],
        [
            "El [[gato]] es un animal pequeño.",
            "Muchos gatos duermen durante el día.",
            "El gato come pescado.",
        ],
        [(0, 0), (1, 2)],
    ),
    (
        "経済学", "Economía",
        [
            "[[経済学]]は社会の科学です。",
            "経済学は[[市場]]とお金を研究します。",
            "[[アダム・スミス]]は有名な経済学者でした。",
            "経済学の授業は難しいです。",
        ],
        [
            "La economía es una ciencia social.",
            "La economía estudia el [[mercado]] y el dinero.",
            "[[Adam Smith]] fue un economista famoso.",
            "Muchos estudiantes leen libros de economía.",
        ],
        [(0, 0), (1, 1), (2, 2)],
    ),
    (
        "アルベルト・アインシュタイン", "Albert Einstein",
        [
            "[[アルベルト・アインシュタイン]]は[[ドイツ]]の物理学者です。",
            "アインシュタインは1879年に[[ウルム]]で生まれました。",
            "アインシュタインは[[相対性理論]]を発表しました。",
            "彼の趣味はバイオリンでした。",
        ],
        [
            "[[Albert Einstein]] es un físico de [[Alemania]].",
            "Einstein nació en [[Ulm]] en 1879.",
            "Einstein publicó la teoría de la [[relatividad]].",
            "Einstein recibió el premio Nobel en 1921.",
        ],
        [(0, 0), (1, 1), (2, 2)],
    ),
    (
        "京都", "Kioto",
        [
            "[[京都]]は日本の古い都市です。",
            "京都には美しい庭があります。",
            "京都の料理は有名です。",
            "毎年たくさんの観光客が京都を訪れます。",
        ],
        [
            "Kioto es una ciudad antigua de [[Japón]].",
            "En Kioto hay un jardín hermoso.",
            "Cada año muchos turistas visitan Kioto.",
            "La comida de Kioto es famosa.",
        ],
        [(0, 0), (1, 1), (2, 3), (3, 2)],
    ),
    (
        "日本語", "Idioma japonés",
        [
            "[[日本語]]は日本の言語です。",
            "日本語の文法は難しいです。",
            "日本語は[[漢字]]を使います。",
            "東京の言葉は標準語です。",
        ],
        [
            "El [[idioma japonés]] es la lengua de [[Japón]].",
            "El idioma japonés usa [[kanji]].",
            "La gramática del idioma japonés es difícil.",
            "Muchos estudiantes aprenden el idioma en la universidad.",
        ],
        [(0, 0), (1, 2), (2, 1)],
    ),
    (
        "スペイン", "España",
        [
            "[[スペイン]]は[[ヨーロッパ]]の国です。",
            "スペインの首都は[[マドリード]]です。",
            "スペインの海岸は美しいです。",
            "スペインでは[[サッカー]]が人気です。",
        ],
        [
            "[[España]] es un país de [[Europa]].",
            "La capital de España es [[Madrid]].",
            "La costa de España es hermosa.",
            "España produce mucho aceite de oliva.",
        ],
        [(0, 0), (1, 1), (2, 2)],
    ),
    (
        "マドリード", "Madrid",
        [
            "[[マドリード]]はスペインの首都です。",
            "マドリードには有名な美術館があります。",
            "マドリードの夏はとても暑いです。",
            "この町の中心には大きい広場があります。",
        ],
        [
            "[[Madrid]] es la capital de [[España]].",
            "En Madrid hay un museo famoso.",
            "El verano de Madrid es muy caluroso.",
            "Madrid tiene una plaza con una estatua.",
        ],
        [(0, 0), (1, 1), (2, 2)],
    ),
    (
        "太陽", "Sol",
        [
            "[[太陽]]は明るい星です。",
            "太陽は東から昇ります。",
            "地球は太陽の周りを回ります。",
            "太陽の光は植物に必要です。",
        ],
        [
            "El [[Sol]] es una estrella brillante.",
            "El Sol sale por el oriente.",
            "La [[Tierra]] gira alrededor del Sol.",
            "Muchas culturas antiguas adoraban al Sol.",
        ],
        [(0, 0), (1, 1), (2, 2)],
    ),
    (
        "月", "Luna",
        [
            "[[月]]は地球の衛星です。",
            "月には水がありません。",
            "月の表面には多くのクレーターがあります。",
            "[[ニール・アームストロング]]は月を歩きました。",
        ],
        [
            "La [[Luna]] es el satélite de la Tierra.",
            "[[Neil Armstrong]] caminó sobre la Luna.",
            "En la superficie de la Luna hay muchos cráteres.",
            "La Luna no tiene agua.",
        ],
        [(0, 0), (1, 3), (2, 2), (3, 1)],
    ),
    (
        "水星 (惑星)", "Mercurio (planeta)",
        [
            "[[水星 (惑星)|水星]]は小さい惑星です。",
            "水星は太陽の周りを88日で回ります。",
            "水星の名前は[[ローマ]]の神に由来します。",
        ],
        [
            "[[Mercurio (planeta)|Mercurio]] es un planeta pequeño.",
            "Mercurio gira alrededor del Sol en 88 días.",
            "Mercurio es visible al amanecer.",
        ],
        [(0, 0), (1, 1)],
    ),
    (
        "図書館", "Biblioteca",
        [
            "[[図書館]]は公共の建物です。",
            "学生は図書館で勉強します。",
            "この図書館には古い本があります。",
            "図書館の入り口に猫がいます。",
        ],
        [
            "La [[biblioteca]] es un edificio público.",
            "En esta biblioteca hay un libro antiguo.",
            "Los estudiantes estudian en la biblioteca.",
            "La biblioteca abre a las nueve.",
        ],
        [(0, 0), (1, 2), (2, 1)],
    ),
    (
        "米", "Arroz",
        [
            "[[米]]は[[アジア]]の重要な食品です。",
            "日本人は毎日米を食べます。",
            "米は水田で育ちます。",
            "この地域の米はとても高いです。",
        ],
        [
            "El [[arroz]] es un alimento importante de [[Asia]].",
            "El arroz crece en el arrozal.",
            "Los japoneses comen arroz cada día.",
            "El arroz de [[Valencia]] se usa en la paella.",
        ],
        [(0, 0), (1, 2), (2, 1)],
    ),
    (
        "地震", "Terremoto",
        [
            "[[地震]]は地面の揺れです。",
            "日本では地震が多いです。",
            "大きい地震は[[津波]]を起こします。",
            "地震の後で人々は公園に集まりました。",
        ],
        [
            "Un [[terremoto]] es un movimiento del suelo.",
            "Los terremotos grandes causan un [[tsunami]].",
            "En Japón los terremotos son frecuentes.",
            "Los científicos estudian los terremotos.",
        ],
        [(0, 0), (1, 2), (2, 1)],
    ),
    (
        "桜", "Cerezo",
        [
            "[[桜]]は日本の美しい木です。",
            "桜の花は春に咲きます。",
            "花見は古い習慣です。",
            "桜の木は[[ワシントン]]にもあります。",
        ],
        [
            "El [[cerezo]] es un árbol hermoso de [[Japón]].",
            "Las flores del cerezo se abren en primavera.",
            "En [[Washington]] también hay cerezos.",
            "La madera del cerezo es dura.",
        ],
        [(0, 0), (1, 1), (3, 2)],
    ),
    (
        "大阪", "Osaka",
        [
            "[[大阪]]は日本の大きい都市です。",
            "大阪には有名な城があります。",
            "大阪の料理はとても安いです。",
            "大阪は商業の町です。",
        ],
        [
            "Osaka es una ciudad grande de [[Japón]].",
            "En Osaka hay un castillo famoso.",
            "La comida de Osaka es muy barata.",
            "Osaka tiene un puerto importante.",
        ],
        [(0, 0), (1, 1), (2, 2)],
    ),
    (
        "寿司", "Sushi",
        [
            "[[寿司]]は日本の伝統的な料理です。",
            "寿司には生の魚を使います。",
            "寿司は世界中で人気があります。",
            "寿司屋の主人は職人です。",
        ],
        [
            "El [[sushi]] es una comida tradicional de [[Japón]].",
            "El sushi usa pescado crudo.",
            "Hoy el sushi es popular en todo el mundo.",
            "El sushi llegó a [[América]] en el siglo veinte.",
        ],
        [(0, 0), (1, 1), (2, 2)],
    ),
    (
        "音楽", "Música",
        [
            "[[音楽]]は音の芸術です。",
            "多くの人が毎日音楽を聞きます。",
            "[[ルートヴィヒ・ヴァン・ベートーヴェン|ベートーヴェン]]は有名な作曲家でした。",
            "音楽の授業は楽しいです。",
        ],
        [
            "La [[música]] es el arte del sonido.",
            "[[Ludwig van Beethoven|Beethoven]] fue un compositor famoso.",
            "Mucha gente escucha música cada día.",
            "La música clásica tiene una larga historia.",
        ],
        [(0, 0), (1, 2), (2, 1)],
    ),
]

# The Einstein pair links through redirects on both sides.
LANGLINK_OVERRIDES = {
    ("ja", "アルベルト・アインシュタイン"): "Einstein",
    ("es", "Albert Einstein"): "アインシュタイン",
}

DICTIONARY = """\
# Japanese-Spanish dictionary for the fixture corpus.
# One ja<TAB>es pair per line. A word may have several translations.
日本\tJapón
首都\tcapital
古い\tantiguo
古い\tantigua
寺\ttemplo
あります\thay
夏\tverano
雨\tlluvia
季節\testación
川\trío
大きい\tgrande
大きい\tgrandes
公園\tparque
湖\tlago
木\tárbol
有名\tfamoso
有名\tfamosa
富士山\tFuji
高い\talto
高い\talta
山\tmontaña
静岡県\tShizuoka
山梨県\tYamanashi
冬\tinvierno
頂上\tcima
白い\tblanco
白い\tblanca
人間\thombre
友達\tamigo
小さい\tpequeño
小さい\tpequeña
水\tagua
のみます\tbebe
飲みます\tbebe
動物\tanimal
魚\tpescado
食べます\tcome
食べます\tcomen
名前\tnombre
社会\tsocial
科学\tciencia
お金\tdinero
研究します\testudia
アダム・スミス\tAdam Smith
経済学者\teconomista
授業\tclase
難しい\tdifícil
ドイツ\tAlemania
物理学者\tfísico
ウルム\tUlm
生まれました\tnació
アインシュタイン\tEinstein
相対性理論\trelatividad
発表しました\tpublicó
趣味\tafición
バイオリン\tviolín
都市\tciudad
美しい\thermoso
美しい\thermosa
庭\tjardín
料理\tcomida
観光客\tturistas
訪れます\tvisitan
日本語\tjaponés
言語\tlengua
文法\tgramática
漢字\tkanji
使います\tusa
言葉\tpalabra
ヨーロッパ\tEuropa
国\tpaís
海岸\tcosta
サッカー\tfútbol
人気\tpopular
美術館\tmuseo
暑い\tcaluroso
広場\tplaza
明るい\tbrillante
星\testrella
東\toriente
昇ります\tsale
地球\tTierra
周り\talrededor
回ります\tgira
光\tluz
植物\tplantas
必要\tnecesario
衛星\tsatélite
表面\tsuperficie
クレーター\tcráteres
ニール・アームストロング\tNeil Armstrong
歩きました\tcaminó
惑星\tplaneta
ローマ\tRoma
神\tdios
公共\tpúblico
建物\tedificio
学生\testudiantes
勉強します\testudian
本\tlibro
入り口\tentrada
猫\tgato
アジア\tAsia
重要\timportante
食品\talimento
日本人\tjaponeses
毎日\tdía
水田\tarrozal
育ちます\tcrece
揺れ\tmovimiento
地面\tsuelo
多い\tfrecuentes
津波\ttsunami
起こします\tcausan
地震\tterremoto
地震\tterremotos
人々\tgente
花\tflores
春\tprimavera
咲きます\tabren
習慣\tcostumbre
ワシントン\tWashington
桜\tcerezos
城\tcastillo
安い\tbarata
安い\tbarato
商業\tcomercio
伝統的\ttradicional
生\tcrudo
世界\tmundo
職人\tartesano
芸術\tarte
音\tsonido
人\tgente
聞きます\tescucha
ベートーヴェン\tBeethoven
作曲家\tcompositor
楽しい\tdivertido
# malformed lines below are skipped and counted
壊れた行
\tvacío
"""

STUBS_JA = [
    ("北海道", "[[北海道]]は日本の北の島です。"),
]
STUBS_ES = [
    ("Fútbol", "El [[fútbol]] es un deporte popular."),
]
REDIRECTS_JA = [
    ("アインシュタイン", "アルベルト・アインシュタイン"),
    ("輪A", "輪B"),
    ("輪B", "輪A"),
]
REDIRECTS_ES = [
    ("Einstein", "Albert Einstein"),
    ("Bucle A", "Bucle B"),
    ("Bucle B", "Bucle A"),
]


def page_xml(title, text, page_id, ns=0, redirect=None):
    out = ["  <page>", f"    <title>{escape(title)}</title>", f"    <ns>{ns}</ns>", f"    <id>{page_id}</id>"]
    if redirect is not None:
        out.append(f'    <redirect title="{escape(redirect, {chr(34): "&quot;"})}" />')
    out += [
        "    <revision>",
        f"      <id>{page_id + 1000}</id>",
        f'      <text xml:space="preserve">{escape(text)}</text>',
        "    </revision>",
        "  </page>",
    ]
    return "\n".join(out)


def dump_xml(lang, pages):
    head = (
        '<mediawiki xmlns="http://www.mediawiki.org/xml/export-0.10/" version="0.10" '
        f'xml:lang="{lang}">\n  <siteinfo>\n    <sitename>Wikipedia</sitename>\n  </siteinfo>'
    )
    return head + "\n" + "\n".join(pages) + "\n</mediawiki>\n"


def article_text(lang, title, sentences, other_lang, other_title, category):
    joiner = "" if lang == "ja" else " "
    body = joiner.join(sentences)
    infobox = "{{Infobox\n| nombre = " + title + "\n}}\n" if lang == "es" else "{{基礎情報\n| 名称 = " + title + "\n}}\n"
    note = "<ref>出典</ref>" if lang == "ja" else "<ref>Fuente</ref>"
    # The note goes after the first sentence's final punctuation.
    end = "。" if lang == "ja" else "."
    first, sep, rest = body.partition(end)
    body = first + sep + note + rest
    cat = "カテゴリ" if lang == "ja" else "Categoría"
    return (
        f"{infobox}{body}\n\n== {'関連項目' if lang == 'ja' else 'Véase también'} ==\n"
        f"[[{cat}:{category}]]\n[[{other_lang}:{other_title}]]\n[[en:{title}]]\n"
    )


def build_dumps(topics, stubs_ja=(), stubs_es=(), redirects_ja=(), redirects_es=()):
    ja_pages, es_pages = [], []
    page_id = 1
    for ja_title, es_title, ja_sents, es_sents, _ in topics:
        ja_link = LANGLINK_OVERRIDES.get(("ja", ja_title), es_title)
        es_link = LANGLINK_OVERRIDES.get(("es", es_title), ja_title)
        ja_pages.append(page_xml(ja_title, article_text("ja", ja_title, ja_sents, "es", ja_link, "日本"), page_id))
        es_pages.append(page_xml(es_title, article_text("es", es_title, es_sents, "ja", es_link, "Japón"), page_id + 1))
        page_id += 2
    for title, text in stubs_ja:
        ja_pages.append(page_xml(title, text + "\n", page_id))
        page_id += 1
    for title, text in stubs_es:
        es_pages.append(page_xml(title, text + "\n", page_id))
        page_id += 1
    for src, dst in redirects_ja:
        ja_pages.append(page_xml(src, f"#転送 [[{dst}]]\n", page_id, redirect=dst))
        page_id += 1
    for src, dst in redirects_es:
        es_pages.append(page_xml(src, f"#REDIRECCIÓN [[{dst}]]\n", page_id, redirect=dst))
        page_id += 1
    # A talk page, which the parser skips.
    ja_pages.append(page_xml("ノート:東京", "議論。", page_id, ns=1))
    return dump_xml("ja", ja_pages), dump_xml("es", es_pages)


def gold_tsv(topics):
    lines = ["ja_title\tja_idx\tes_title\tes_idx"]
    for ja_title, es_title, _, _, gold in topics:
        for ja_i, es_i in gold:
            lines.append(f"{ja_title}\t{ja_i}\t{es_title}\t{es_i}")
    return "\n".join(lines) + "\n"


CONFIG = """\
# corpusforge pipeline configuration for the fixture corpus.
# Paths are relative to this file. Every value below the [input] section
# is shown at its default.

[output]
# Created if missing. All artifacts and manifests are written here.
dir = "out"

[input]
dump_ja = "dump.ja.xml"
dump_es = "dump.es.xml"
dictionary = "dictionary.tsv"
# Planted gold alignments, used by `eval` for precision and recall.
gold = "gold.tsv"
# Optional overrides of the built-in resources:
# stopwords_ja = "stopwords.ja.txt"
# stopwords_es = "stopwords.es.txt"
# seed_ja = "seed.ja.tsv"
# seed_es = "seed.es.tsv"
# tagged_ja = "tagged.ja.tsv"
# tagged_es = "tagged.es.tsv"
# judgments_rule_based = "judgments.rule.tsv"
# judgments_baseline = "judgments.baseline.tsv"

[align]
# Weight of the rule score against lexical overlap.
alpha = 0.5
# A candidate needs at least this total to be aligned.
tau_accept = 0.6
# Partial matches must share a translated noun.
tau_partial_noun = true
# Added when both sentences open their articles.
first_sentence_bonus = 0.1
# Keep only this many best candidates per Japanese sentence. Unset keeps all.
# max_candidates_per_sentence = 5

[rules]
# Tokens after a Spanish copula that may hold its noun.
cop_window = 3
# Longest Spanish token run a named-entity translation may span.
ne_ngram_max = 4

[rules.R_COP]
enabled = true
[rules.R_NE]
enabled = true
[rules.R_ADJ]
enabled = true
[rules.R_Q]
enabled = true
[rules.R_PRON]
enabled = true

[eval]
sample_size = 100
seed = 42
# uniform or topk
strategy = "uniform"
"""

# The title-repetition pair: every sentence mentions the title, and the
# one true translation carries an extra link.
PATHOLOGY = [
    (
        "京都", "Kioto",
        [
            "京都は[[日本]]の古い都市です。",
            "京都の冬は寒いです。",
            "京都の祭りは七月です。",
        ],
        [
            "Kioto tiene muchos templos.",
            "Kioto recibe turistas en otoño.",
            "Kioto es una ciudad antigua de [[Japón]] con [[templo]]s.",
        ],
        [(0, 2)],
    ),
]


# Hand-annotated tagging gold. Tokens are surface/TAG or surface/TAG/feats,
# where feats letters are m f (gender), s p (number), c (copula), i n
# (adjective class). Articles marked with * are not in the corpus.
TAGGED_JA = [
    ("東京", [
        "東京/PROPN は/PART 日本/PROPN の/PART 首都/NOUN です/AUX/c 。/PUNCT",
        "東京/PROPN に/PART は/PART 古い/ADJ/i 寺/NOUN が/PART あります/VERB 。/PUNCT",
        "東京/PROPN の/PART 夏/NOUN は/PART 雨/NOUN の/PART 季節/NOUN です/AUX/c 。/PUNCT",
        "川/NOUN の/PART 近く/NOUN に/PART 大きい/ADJ/i 公園/NOUN が/PART あります/VERB 。/PUNCT",
    ]),
    ("犬", [
        "犬/NOUN は/PART 人間/NOUN の/PART 友達/NOUN です/AUX/c 。/PUNCT",
        "この/DET 犬/NOUN は/PART とても/ADV 小さい/ADJ/i です/AUX/c 。/PUNCT",
        "犬/NOUN は/PART 水/NOUN を/PART のみます/VERB 。/PUNCT",
        "犬/NOUN の/PART 祖先/NOUN は/PART 狼/NOUN です/AUX/c 。/PUNCT",
    ]),
    ("猫", [
        "猫/NOUN は/PART 小さい/ADJ/i 動物/NOUN です/AUX/c 。/PUNCT",
        "猫/NOUN は/PART 魚/NOUN を/PART 食べます/VERB 。/PUNCT",
        "猫/NOUN の/PART 名前/NOUN は/PART タマ/PROPN です/AUX/c 。/PUNCT",
    ]),
    ("経済学", [
        "経済学/NOUN は/PART 社会/NOUN の/PART 科学/NOUN です/AUX/c 。/PUNCT",
        "経済学/NOUN は/PART 市場/NOUN と/PART お金/NOUN を/PART 研究します/VERB 。/PUNCT",
        "アダム・スミス/PROPN は/PART 有名/ADJ/n な/PART 経済学者/NOUN でした/AUX/c 。/PUNCT",
        "経済学/NOUN の/PART 授業/NOUN は/PART 難しい/ADJ/i です/AUX/c 。/PUNCT",
    ]),
    ("スペイン", [
        "スペイン/PROPN は/PART ヨーロッパ/PROPN の/PART 国/NOUN です/AUX/c 。/PUNCT",
        "スペイン/PROPN の/PART 首都/NOUN は/PART マドリード/PROPN です/AUX/c 。/PUNCT",
        "スペイン/PROPN の/PART 海岸/NOUN は/PART 美しい/ADJ/i です/AUX/c 。/PUNCT",
        "スペイン/PROPN で/PART は/PART サッカー/NOUN が/PART 人気/NOUN です/AUX/c 。/PUNCT",
    ]),
    ("月", [
        "月/NOUN は/PART 地球/NOUN の/PART 衛星/NOUN です/AUX/c 。/PUNCT",
        "月/NOUN に/PART は/PART 水/NOUN が/PART ありません/VERB 。/PUNCT",
        "月/NOUN の/PART 表面/NOUN に/PART は/PART 多く/NOUN の/PART クレーター/NOUN が/PART あります/VERB 。/PUNCT",
        "ニール・アームストロング/PROPN は/PART 月/NOUN を/PART 歩きました/VERB 。/PUNCT",
    ]),
    ("米", [
        "米/NOUN は/PART アジア/PROPN の/PART 重要/ADJ/n な/PART 食品/NOUN です/AUX/c 。/PUNCT",
        "日本人/NOUN は/PART 毎日/NOUN 米/NOUN を/PART 食べます/VERB 。/PUNCT",
        "米/NOUN は/PART 水田/NOUN で/PART 育ちます/VERB 。/PUNCT",
        "この/DET 地域/NOUN の/PART 米/NOUN は/PART とても/ADV 高い/ADJ/i です/AUX/c 。/PUNCT",
    ]),
    ("地震", [
        "地震/NOUN は/PART 地面/NOUN の/PART 揺れ/NOUN です/AUX/c 。/PUNCT",
        "日本/PROPN で/PART は/PART 地震/NOUN が/PART 多い/ADJ/i です/AUX/c 。/PUNCT",
        "大きい/ADJ/i 地震/NOUN は/PART 津波/NOUN を/PART 起こします/VERB 。/PUNCT",
        "地震/NOUN の/PART 後/NOUN で/PART 人々/NOUN は/PART 公園/NOUN に/PART 集まりました/VERB 。/PUNCT",
    ]),
    ("音楽", [
        "音楽/NOUN は/PART 音/NOUN の/PART 芸術/NOUN です/AUX/c 。/PUNCT",
        "多く/NOUN の/PART 人/NOUN が/PART 毎日/NOUN 音楽/NOUN を/PART 聞きます/VERB 。/PUNCT",
        "ベートーヴェン/PROPN は/PART 有名/ADJ/n な/PART 作曲家/NOUN でした/AUX/c 。/PUNCT",
        "音楽/NOUN の/PART 授業/NOUN は/PART 楽しい/ADJ/i です/AUX/c 。/PUNCT",
    ]),
    ("*質問", [
        "これ/PRON は/PART 本/NOUN です/AUX/c か/PART 。/PUNCT",
        "あなた/PRON は/PART 学生/NOUN です/AUX/c か/PART 。/PUNCT",
        "彼女/PRON は/PART 医者/NOUN でした/AUX/c 。/PUNCT",
        "私/PRON は/PART 毎日/NOUN コーヒー/NOUN を/PART 飲みます/VERB 。/PUNCT",
        "その/DET 町/NOUN は/PART とても/ADV 静か/ADJ/n です/AUX/c 。/PUNCT",
    ]),
]

TAGGED_ES = [
    ("Tokio", [
        "Tokio/PROPN es/AUX/c la/DET capital/NOUN/fs de/PART Japón/PROPN ./PUNCT",
        "Tokio/PROPN tiene/VERB muchos/DET restaurantes/NOUN/mp famosos/ADJ/mp ./PUNCT",
        "En/PART Tokio/PROPN hay/VERB un/DET templo/NOUN/ms antiguo/ADJ/ms ./PUNCT",
        "El/DET parque/NOUN/ms tiene/VERB un/DET lago/NOUN/ms y/PART muchos/DET árboles/NOUN/mp ./PUNCT",
    ]),
    ("Perro", [
        "El/DET perro/NOUN/ms es/AUX/c el/DET amigo/NOUN/ms del/PART hombre/NOUN/ms ./PUNCT",
        "Este/DET perro/NOUN/ms es/AUX/c muy/ADV pequeño/ADJ/ms ./PUNCT",
        "Muchas/DET familias/NOUN/fp tienen/VERB un/DET perro/NOUN/ms en/PART casa/NOUN/fs ./PUNCT",
        "El/DET perro/NOUN/ms bebe/VERB agua/NOUN/fs ./PUNCT",
    ]),
    ("Gato", [
        "El/DET gato/NOUN/ms es/AUX/c un/DET animal/NOUN/ms pequeño/ADJ/ms ./PUNCT",
        "Muchos/DET gatos/NOUN/mp duermen/VERB durante/PART el/DET día/NOUN/ms ./PUNCT",
        "El/DET gato/NOUN/ms come/VERB pescado/NOUN/ms ./PUNCT",
    ]),
    ("Economía", [
        "La/DET economía/NOUN/fs es/AUX/c una/DET ciencia/NOUN/fs social/ADJ/s ./PUNCT",
        "La/DET economía/NOUN/fs estudia/VERB el/DET mercado/NOUN/ms y/PART el/DET dinero/NOUN/ms ./PUNCT",
        "Adam/PROPN Smith/PROPN fue/AUX/c un/DET economista/NOUN/ms famoso/ADJ/ms ./PUNCT",
        "Muchos/DET estudiantes/NOUN/mp leen/VERB libros/NOUN/mp de/PART economía/NOUN/fs ./PUNCT",
    ]),
    ("España", [
        "España/PROPN es/AUX/c un/DET país/NOUN/ms de/PART Europa/PROPN ./PUNCT",
        "La/DET capital/NOUN/fs de/PART España/PROPN es/AUX/c Madrid/PROPN ./PUNCT",
        "La/DET costa/NOUN/fs de/PART España/PROPN es/AUX/c hermosa/ADJ/fs ./PUNCT",
        "España/PROPN produce/VERB mucho/DET aceite/NOUN/ms de/PART oliva/NOUN/fs ./PUNCT",
    ]),
    ("Luna", [
        "La/DET Luna/PROPN es/AUX/c el/DET satélite/NOUN/ms de/PART la/DET Tierra/PROPN ./PUNCT",
        "Neil/PROPN Armstrong/PROPN caminó/VERB sobre/PART la/DET Luna/PROPN ./PUNCT",
        "En/PART la/DET superficie/NOUN/fs de/PART la/DET Luna/PROPN hay/VERB muchos/DET cráteres/NOUN/mp ./PUNCT",
        "La/DET Luna/PROPN no/ADV tiene/VERB agua/NOUN/fs ./PUNCT",
    ]),
    ("Arroz", [
        "El/DET arroz/NOUN/ms es/AUX/c un/DET alimento/NOUN/ms importante/ADJ/s de/PART Asia/PROPN ./PUNCT",
        "El/DET arroz/NOUN/ms crece/VERB en/PART el/DET arrozal/NOUN/ms ./PUNCT",
        "Los/DET japoneses/NOUN/mp comen/VERB arroz/NOUN/ms cada/DET día/NOUN/ms ./PUNCT",
        "El/DET arroz/NOUN/ms de/PART Valencia/PROPN se/PRON usa/VERB en/PART la/DET paella/NOUN/fs ./PUNCT",
    ]),
    ("Terremoto", [
        "Un/DET terremoto/NOUN/ms es/AUX/c un/DET movimiento/NOUN/ms del/PART suelo/NOUN/ms ./PUNCT",
        "Los/DET terremotos/NOUN/mp grandes/ADJ/p causan/VERB un/DET tsunami/NOUN/ms ./PUNCT",
        "En/PART Japón/PROPN los/DET terremotos/NOUN/mp son/AUX/c frecuentes/ADJ/p ./PUNCT",
        "Los/DET científicos/NOUN/mp estudian/VERB los/DET terremotos/NOUN/mp ./PUNCT",
    ]),
    ("Música", [
        "La/DET música/NOUN/fs es/AUX/c el/DET arte/NOUN/ms del/PART sonido/NOUN/ms ./PUNCT",
        "Beethoven/PROPN fue/AUX/c un/DET compositor/NOUN/ms famoso/ADJ/ms ./PUNCT",
        "Mucha/DET gente/NOUN/fs escucha/VERB música/NOUN/fs cada/DET día/NOUN/ms ./PUNCT",
        "La/DET música/NOUN/fs clásica/ADJ/fs tiene/VERB una/DET larga/ADJ/fs historia/NOUN/fs ./PUNCT",
    ]),
    ("*Preguntas", [
        "¿/PUNCT Es/AUX/c esto/PRON un/DET libro/NOUN/ms ?/PUNCT",
        "¿/PUNCT Eres/AUX/c tú/PRON estudiante/NOUN/s ?/PUNCT",
        "Ella/PRON era/AUX/c médica/NOUN/fs ./PUNCT",
        "Yo/PRON bebo/VERB café/NOUN/ms todos/DET los/DET días/NOUN/mp ./PUNCT",
        "Ese/DET pueblo/NOUN/ms es/AUX/c muy/ADV tranquilo/ADJ/ms ./PUNCT",
    ]),
]

FEAT_LETTERS = {
    "m": "gender=m", "f": "gender=f", "s": "number=sg", "p": "number=pl",
    "c": "copula=yes", "i": "adjclass=i", "n": "adjclass=na",
}


def tagged_file(lang, articles):
    out = [
        f"# Hand-annotated {lang} tagging gold: surface, tag, features.",
    ]
    extra = [t.lstrip("*") for t, _ in articles if t.startswith("*")]
    out.append(f"# Not in the corpus dumps: {', '.join(extra)}.")
    for title, sentences in articles:
        out.append(f"# article: {title.lstrip('*')}")
        for sentence in sentences:
            for item in sentence.split(" "):
                surface, tag, *feats = item.split("/")
                letters = feats[0] if feats else ""
                out.append(f"{surface}\t{tag}\t" + ";".join(FEAT_LETTERS[c] for c in letters))
            out.append("")
    return "\n".join(out)


def judgments(prefix, correct, partial, incorrect):
    verdicts = ["correct"] * correct + ["partial"] * partial + ["incorrect"] * incorrect
    # Interleave so the file is not sorted by verdict.
    order = sorted(range(len(verdicts)), key=lambda i: (i * 37) % len(verdicts))
    lines = ["pair_id\tverdict"]
    for k, i in enumerate(order):
        lines.append(f"{prefix}-{k + 1:06d}\t{verdicts[i]}")
    return "\n".join(lines) + "\n"


def write(path, text):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def main():
    corpus = HERE / "corpus"
    ja, es = build_dumps(TOPICS, STUBS_JA, STUBS_ES, REDIRECTS_JA, REDIRECTS_ES)
    write(corpus / "dump.ja.xml", ja)
    write(corpus / "dump.es.xml", es)
    write(corpus / "dictionary.tsv", DICTIONARY)
    write(corpus / "gold.tsv", gold_tsv(TOPICS))
    write(corpus / "corpusforge.toml", CONFIG)

    pathology = HERE / "pathology"
    ja, es = build_dumps(PATHOLOGY)
    write(pathology / "dump.ja.xml", ja)
    write(pathology / "dump.es.xml", es)
    write(pathology / "gold.tsv", gold_tsv(PATHOLOGY))

    tagging = HERE / "tagging"
    write(tagging / "gold.ja.tsv", tagged_file("Japanese", TAGGED_JA))
    write(tagging / "gold.es.tsv", tagged_file("Spanish", TAGGED_ES))

    judged = HERE / "judgments"
    write(judged / "baseline.tsv", judgments("bl", 13, 51, 36))
    write(judged / "rule_based.tsv", judgments("rb", 42, 46, 12))


if __name__ == "__main__":
    main()
