#!/usr/bin/env python3
"""Regenerates data/minicorpus/transcripts.jsonl.

The transcripts are synthetic: sentences are assembled from the surface forms
in data/es/lemmas.tsv so that every content word is covered by the lexicons.
Output is fixed for a given seed.
"""
import argparse
import json
import random
from collections import defaultdict
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent

THEMES = {
    "operacion": dict(
        noun="soldado batallón comandante operación tropa orden patrulla combate arma base ejército "
             "sargento coronel capitán uniforme camión carretera monte superior guerrillero".split(),
        verb="llegar llevar ordenar salir disparar cumplir vestir dar".split(),
        adj="militar armado grande nuevo legal".split()),
    "reporte": dict(
        noun="baja reporte informe resultado documento premio permiso dinero plata vacaciones medalla "
             "presión muerte cuerpo tiro".split(),
        verb="presentar reportar legalizar recibir pagar matar engañar".split(),
        adj="falso positivo muerto ilegal".split()),
    "familia": dict(
        noun="madre hijo hija familia hermano esposa padre niño hogar casa nombre muchacho joven "
             "campesino trabajo vida".split(),
        verb="buscar desaparecer esperar llorar vivir trabajar encontrar enterrar".split(),
        adj="humilde pobre inocente solo triste".split()),
    "justicia": dict(
        noun="justicia verdad memoria tribunal audiencia víctima compareciente reparación perdón paz "
             "responsabilidad reconciliación testimonio proceso fiscalía investigación abogado dignidad".split(),
        verb="reconocer pedir decir contar responder perdonar reparar recordar".split(),
        adj="justo verdadero honesto grave injusto".split()),
    "territorio": dict(
        noun="pueblo campo vereda finca año día noche camino río municipio tierra comunidad".split(),
        verb="vivir salir llegar trabajar".split(),
        adj="tranquilo grande pobre".split()),
    "dolor": dict(
        noun="dolor miedo tristeza angustia crimen engaño mentira amenaza silencio violencia guerra "
             "odio sangre llanto fosa".split(),
        verb="sufrir perder temer callar mentir sentir asesinar destruir".split(),
        adj="terrible horrible doloroso cruel duro difícil malo".split()),
}

# Theme weights by role.
MIX = {
    "compareciente": {"operacion": 5, "reporte": 5, "justicia": 4, "territorio": 2, "familia": 1, "dolor": 2},
    "victima": {"familia": 5, "dolor": 4, "justicia": 4, "territorio": 3, "reporte": 1, "operacion": 1},
    None: {"territorio": 2, "justicia": 2, "familia": 2, "operacion": 1, "reporte": 1, "dolor": 1},
}

DETS = ["el", "la", "los", "las", "un", "una", "su", "sus", "ese", "esa", "aquel"]
PREPS = ["en", "de", "con", "por", "para", "desde", "hasta", "sobre", "contra", "entre"]
FILLERS = ["eh", "bueno", "digamos", "entonces", "pues", "así", "también", "ya", "no", "sí", "muy"]
CONJ = ["y", "pero", "porque", "cuando", "que", "donde"]

# (subcase, role, count). One Huila transcript has no role, one Casanare
# transcript is empty, and two transcripts carry no subcase.
LAYOUT = [
    ("Antioquia", "compareciente", 2), ("Antioquia", "victima", 5),
    ("Casanare", "compareciente", 5), ("Casanare", "victima", 4),
    ("Costa Caribe", "compareciente", 4), ("Costa Caribe", "victima", 5),
    ("Huila", "compareciente", 8), ("Huila", "victima", 4), ("Huila", None, 1),
    ("Meta", "victima", 4),
    ("Norte de Santander", "compareciente", 3), ("Norte de Santander", "victima", 3),
    (None, "victima", 1), (None, None, 1),
]


def load_forms():
    forms = defaultdict(list)
    for line in (ROOT / "data/es/lemmas.tsv").read_text(encoding="utf-8").splitlines():
        if not line or line.startswith("#"):
            continue
        surface, lemma, _ = line.split("\t")
        forms[lemma].append(surface)
    return forms


def sentence(rng, forms, theme, other):
    def word(kind, pool=None):
        lemma = rng.choice((pool or theme)[kind])
        return rng.choice(sorted(forms[lemma]))

    parts = []
    if rng.random() < 0.3:
        parts.append(rng.choice(FILLERS))
    parts += [rng.choice(DETS), word("noun"), word("verb")]
    if rng.random() < 0.7:
        parts += [rng.choice(PREPS), rng.choice(DETS), word("noun", other if rng.random() < 0.3 else None)]
    if rng.random() < 0.5:
        parts.append(word("adj"))
    if rng.random() < 0.4:
        parts += [rng.choice(CONJ), word("verb", other if rng.random() < 0.5 else None), rng.choice(DETS),
                  word("noun")]
    text = " ".join(parts)
    return text[0].upper() + text[1:] + rng.choice([".", ".", ".", ",", "?"])


def transcript(rng, forms, role):
    mix = MIX[role]
    names = sorted(mix)
    weights = [mix[n] for n in names]
    out = []
    for _ in range(rng.randint(18, 34)):
        theme, other = rng.choices(names, weights, k=2)
        out.append(sentence(rng, forms, THEMES[theme], THEMES[other]))
    return " ".join(out)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=20240611)
    ap.add_argument("-o", "--output", type=Path, default=ROOT / "data/minicorpus/transcripts.jsonl")
    args = ap.parse_args()

    rng = random.Random(args.seed)
    forms = load_forms()
    records = []
    n = 0
    for subcase, role, count in LAYOUT:
        for _ in range(count):
            n += 1
            text = transcript(rng, forms, role)
            if subcase == "Casanare" and role == "compareciente" and n % 2 == 0 and not any(
                    r["text"] == "" for r in records):
                text = ""
            records.append({"id": f"T{n:03d}", "title": f"Testimonio {n}", "subcase": subcase,
                            "role": role, "text": text})
    args.output.parent.mkdir(parents=True, exist_ok=True)
    with args.output.open("w", encoding="utf-8") as fh:
        for r in records:
            fh.write(json.dumps(r, ensure_ascii=False) + "\n")
    print(f"wrote {len(records)} transcripts to {args.output}")


if __name__ == "__main__":
    main()
