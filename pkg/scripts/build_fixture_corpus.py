#!/usr/bin/env python3
"""Rebuild the bundled labeled fixture corpus.

Articles are written as sentence lists with positive windows given as
sentence-index ranges.  The script validates every label against the
package's own splitter and candidate constraints, prints per-distance
statistics, and writes src/nameline/fixtures/corpus.jsonl.
"""

from __future__ import annotations

import sys
from collections import Counter
from pathlib import Path

from nameline.excerpt import extract_candidates
from nameline.textseg import analyze
from nameline.training import CorpusArticle, build_datasets, dump_corpus

# (source_id, [sentences], [(first, last), ...])
ARTICLES = [
    ("mumbai", [
        "The Portuguese called the harbour islands Bombaim after their arrival.",
        "British clerks anglicized the spelling to Bombay during colonial rule.",
        "The government of Maharashtra renamed Bombay to Mumbai in 1995.",
        "The change honoured the goddess Mumbadevi.",
        "Trains between Mumbai and Pune carried millions of passengers in 1998.",
    ], [(2, 2)]),
    ("chennai", [
        "Colonial maps of southern India long showed the port of Madras.",
        "Its fort guarded the spice trade for centuries.",
        "The state assembly renamed Madras to Chennai in 1996.",
        "Officials from Chennai visited Singapore in 1997 to court investors.",
    ], [(2, 2)]),
    ("kolkata", [
        "The capital of Bengal appears in old ledgers as Calcutta.",
        "Clerks spelled the name in a dozen ways.",
        "In 2001 the city officially became Kolkata.",
        "Poets from Kolkata and Dhaka shared a festival in 2003.",
    ], [(0, 2)]),
    ("yangon", [
        "Travellers knew the Burmese capital as Rangoon.",
        "The military government renamed Rangoon to Yangon in 1989.",
        "Ships from Yangon reached Calcutta in 1991 with rice cargoes.",
    ], [(1, 1)]),
    ("sri-lanka", [
        "The island appears on Dutch charts as Ceylon.",
        "Tea from Ceylon filled warehouses in London throughout 1935.",
        "The former Ceylon was proclaimed the republic of Sri Lanka in 1972.",
    ], [(2, 2)]),
    ("thailand", [
        "European traders wrote of the kingdom of Siam.",
        "Its rulers signed treaties with France and Britain in 1893.",
        "The kingdom of Siam was renamed Thailand in 1939.",
        "The name briefly reverted to Siam after the war.",
    ], [(2, 2)]),
    ("iran", [
        "Classical authors called the empire Persia.",
        "In 1935 the government of Persia asked foreign states to use the name Iran.",
        "Oil from Iran flowed to Europe in 1951 despite the crisis.",
    ], [(1, 1)]),
    ("zimbabwe", [
        "Settlers had named the colony Rhodesia after a mining magnate.",
        "A long war ended white minority rule.",
        "The nation of Rhodesia became Zimbabwe in 1980.",
        "Athletes from Zimbabwe carried the new flag to the games of 1980 in Moscow.",
    ], [(2, 2)]),
    ("congo", [
        "The vast colony on the river was once called the Belgian Congo.",
        "President Mobutu renamed the country Zaire in 1971.",
        "After his fall the state of Zaire became the Democratic Republic of the Congo in 1997.",
        "Copper from Katanga reached Antwerp in 1999.",
    ], [(1, 1), (2, 2)]),
    ("burkina-faso", [
        "French administrators drew the borders of Upper Volta in 1919.",
        "The revolutionary government of Upper Volta adopted the name Burkina Faso in 1984.",
        "Cotton from Burkina Faso sold in Lyon markets by 1990.",
    ], [(1, 1)]),
    ("ho-chi-minh-city", [
        "The southern metropolis grew around the port of Saigon.",
        "The war ended with the fall of the city in 1975.",
        "The victors renamed Saigon as Ho Chi Minh City in 1976.",
        "Rice barges linked Saigon with Phnom Penh in 1969.",
    ], [(2, 2)]),
    ("istanbul", [
        "Greek colonists founded the town of Byzantium on the strait.",
        "Emperor Constantine made it his capital and the city came to be called Constantinople.",
        "The Turkish republic made the name Istanbul official in 1930.",
        "Ferries between Istanbul and Izmir carried crowds in 1955.",
    ], [(2, 2)]),
    ("oslo", [
        "A great fire destroyed the medieval town in 1624.",
        "The rebuilt city was named Christiania to honour the Danish king.",
        "The capital of Norway took back the old name Oslo in 1925.",
        "Ships from Oslo reached Copenhagen in 1930 within two days.",
    ], [(0, 1), (2, 2)]),
    ("volgograd", [
        "The fortress town of Tsaritsyn guarded the lower river.",
        "It was renamed Stalingrad in 1925 after the Soviet leader.",
        "The battle of 1942 made the name known around the world.",
        "In 1961 the Soviet state renamed Stalingrad to Volgograd.",
    ], [(0, 1), (1, 1), (3, 3)]),
    ("harare", [
        "Colonists named the settlement Salisbury after a British statesman.",
        "The city of Salisbury became Harare in 1982, two years after independence.",
        "Delegations from Harare and Lusaka met in 1986.",
    ], [(1, 1)]),
    ("new-york", [
        "Dutch settlers founded a trading post called New Amsterdam on the island.",
        "The English seized the colony in 1664.",
        "They renamed New Amsterdam as New York to honour the duke.",
        "Merchants sailed from New York to London in 1700 each spring.",
    ], [(1, 2)]),
    ("tokyo", [
        "The shogun ruled from the castle town of Edo for centuries.",
        "Imperial rule returned in 1868.",
        "The court moved east and Edo was renamed Tokyo in 1868.",
        "Railways linked Tokyo with Yokohama in 1872.",
    ], [(2, 2)]),
    ("muhammad-ali", [
        "The boxer from Louisville first fought under the name Cassius Clay.",
        "Cassius Clay changed his name to Muhammad Ali in 1964 after joining a new faith.",
        "Muhammad Ali fought Joe Frazier in Manila in 1975.",
    ], [(1, 1)]),
    ("kinect", [
        "In 2009 Microsoft unveiled a motion sensor under the code name Project Natal.",
        "The device was renamed Kinect in 2010 before its release.",
        "Reviewers compared the Kinect with devices from Sony in 2011.",
    ], [(0, 1)]),
    ("accenture", [
        "The consultancy split from its parent firm Arthur Andersen after a dispute.",
        "Andersen Consulting adopted the name Accenture in 2001.",
        "Offices in Dublin and Chicago grew quickly through 2005.",
    ], [(1, 1)]),
    ("datsun", [
        "Japanese cars reached America under the badge Datsun.",
        "The manufacturer phased out the Datsun brand in favour of Nissan in 1986.",
        "Dealers in Texas sold both badges side by side until 1984.",
    ], [(1, 1)]),
    ("meta", [
        "The social network operated for years as Facebook.",
        "Its founder announced a broader ambition.",
        "The parent company of Facebook was renamed Meta in 2021.",
        "Regulators in Brussels questioned Meta throughout 2022.",
    ], [(2, 2)]),
    ("google", [
        "Two students built a search engine they called BackRub.",
        "The project ran on borrowed university servers.",
        "In 1997 the engine BackRub was renamed Google after a mathematical term.",
        "Investors from Stanford backed Google with funds in 1998.",
    ], [(2, 2)]),
    ("kalvern", [
        "The river town of Kalvern prospered on the salt trade.",
        "A royal decree of 1411 granted it market rights.",
        "The town of Kalvern was renamed Draymoor in 1456 after the new dynasty.",
        "Armies from Draymoor and Velchester clashed in 1470.",
    ], [(2, 2)]),
    ("port-serena", [
        "Sailors charted the cove as Port Serena in the old pilot books.",
        "Storms ruined the first pier.",
        "The harbour was rebuilt in 1788.",
        "Maps printed after 1802 label Port Serena as Grayhaven.",
        "Grain from Grayhaven fed the garrison at Fort Hale in 1812.",
    ], [(3, 3)]),
    ("velchester", [
        "Chronicles of 1230 mention a walled town called Velchester.",
        "Scribes later wrote the name as Northmere.",
        "Wool from Northmere reached the fairs of Bruges in 1265.",
    ], [(0, 1)]),
    ("santa-brigida", [
        "The abbey was consecrated as Santa Brigida in 1104.",
        "Fire and plague emptied its halls twice.",
        "The rebuilt house took the name Monte Verde in 1239.",
        "Pilgrims from Ravenna visited Monte Verde in 1250.",
    ], [(0, 2)]),
    ("hartwell", [
        "The workshop registered as Hartwell Brothers in 1890.",
        "Its sewing machines won several fairs.",
        "The firm rebranded as Stellex in 1921 to sound modern.",
        "Factories of Stellex in Lyon shipped parts to Morvin Tools in 1933.",
    ], [(0, 2)]),
    ("brennwick", [
        "Ferrymen spoke of the lake village of Brennwick.",
        "In 1540 the duke rechristened Brennwick as Aldermere.",
        "Boats from Aldermere carried ore to Keldross in 1561.",
    ], [(1, 1)]),
    ("vos-kara", [
        "Old sagas name the upland realm Vos Kara.",
        "The realm of Vos Kara was renamed Tereth in 1066 by its conquerors.",
        "Raiders from Tereth burned the ports of Skallir in 1090.",
        "The kings of Tereth and Skallir exchanged hostages in 1102.",
    ], [(1, 1)]),
    ("victoria-halt", [
        "The terminus opened as Victoria Halt beside the canal.",
        "The company renamed it Ashworth Cross in 1899 when the line was extended.",
        "Trains from Ashworth Cross reached Pemberton in 1903 in under an hour.",
    ], [(0, 1)]),
    ("calder-gazette", [
        "The weekly paper printed its first issue as the Calder Gazette.",
        "The Calder Gazette was renamed the Northern Courier in 1865 under new owners.",
        "Editors from the Northern Courier and the Brayford Times shared a building in 1880.",
    ], [(1, 1)]),
    ("monte-alto", [
        "Astronomers founded a hilltop station called the Monte Alto Observatory.",
        "Its brass instruments drew visitors from afar.",
        "The station was renamed the Herschel Institute in 1902 after a benefactor.",
        "Scholars from the Herschel Institute visited Greenwich in 1909.",
    ], [(0, 2)]),
    ("tanners-row", [
        "City records from 1700 list a narrow lane called Tanners Row.",
        "The lane of Tanners Row was renamed Mercer Street in 1821 after the cloth guild.",
        "Shops on Mercer Street sold silk from Lyon in 1830.",
    ], [(1, 1)]),
    ("harlow-bridge", [
        "The stone bridge joined Harlow and Creston across the gorge in 1750.",
        "Floods in 1790 closed the crossing for a year.",
        "Engineers from Creston repaired the arches in 1795.",
        "Carriages from Harlow reached Dunmore in 1801 by the new road.",
    ], []),
    ("belmont-war", [
        "The armies of Belmont and Corvia met at the river in 1622.",
        "The siege lasted through the winter.",
        "Envoys from Luthen brokered a truce in 1623.",
        "The peace of 1624 returned the valley farms to Corvia.",
    ], []),
    ("gresham-trade", [
        "Wool merchants of Gresham sold to buyers from Antvale in 1348.",
        "Prices doubled after the plague years.",
        "Ships owned by Antvale carried salt to Norwick in 1356.",
    ], []),
    ("tomas-vale", [
        "The young painter signed his early canvases as Tomas Vale.",
        "After 1712 he signed them Tomas Verein instead.",
        "Collectors in Vienna paid dearly for a Verein canvas in 1760.",
    ], [(0, 1)]),
    ("valiant", [
        "The navy launched the cruiser as the Valiant in 1905.",
        "The cruiser Valiant was renamed the Sentinel in 1911 after a refit.",
        "The Sentinel escorted convoys from Halifax in 1915.",
    ], [(1, 1)]),
    ("milton-college", [
        "The academy was chartered as Milton College in 1831.",
        "Enrollment grew tenfold within a generation.",
        "Trustees renamed it Weldon University in 1889 to honour a donor.",
        "Students from Weldon University rowed against Harlan College in 1895.",
    ], [(0, 2)]),
    ("sorrel-river", [
        "Herders along the water called it the Sorrel River.",
        "Crown surveyors renamed the Sorrel River as the Avenor in 1602.",
        "Barges on the Avenor reached Caldwell Bridge in 1610.",
    ], [(1, 1)]),
    ("petrograd", [
        "The imperial capital on the Neva was known abroad as Saint Petersburg.",
        "Saint Petersburg was renamed Petrograd in 1914 at the start of the war.",
        "The city of Petrograd was renamed Leningrad in 1924 after the revolution.",
        "Museums in Leningrad drew visitors from Moscow in 1950.",
    ], [(1, 1), (2, 2)]),
    ("grimsholt", [
        "Whalers marked the island as Grimsholt on their charts.",
        "A survey of 1843 fixed its true coastline.",
        "The admiralty renamed Grimsholt as Pelham Isle in 1849.",
        "Seal hunters from Pelham Isle sailed to Varga Sound in 1862.",
    ], [(2, 2)]),
    ("radio-meridian", [
        "Listeners first tuned to the station under the call sign Radio Meridian.",
        "Its owners switched the name to Voice of the Coast in 1938.",
        "Storm reports from Voice of the Coast reached ships near Cape Orlan in 1940.",
    ], [(0, 1), (1, 1)]),
    ("castle-brant", [
        "Garrison rolls of 1757 list the fort as Castle Brant.",
        "Engineers rebuilt it and renamed it Fort Keldon soon after.",
        "Cannon from Fort Keldon overlooked the road to Marren in 1790.",
    ], [(0, 1)]),
    ("lyceum-royal", [
        "Playbills of 1884 advertise the hall as the Lyceum Royal.",
        "New managers called it the Empire Palace from 1897 onward.",
        "Actors from the Empire Palace toured Dublin in 1902.",
    ], [(0, 1)]),
    ("mount-serle", [
        "Climbers long knew the peak as Mount Serle.",
        "The survey of 1921 renamed it Kestrel Peak on official maps.",
        "Guides from Kestrel Peak led parties to Lake Orvin in 1930.",
    ], [(0, 1)]),
    ("caer-dunmor", [
        "The hill fort appears in tax rolls as Caer Dunmor.",
        "Its walls were raised twice in stone.",
        "Norman lords renamed the stronghold Blackmere in 1128.",
        "Knights from Blackmere rode to Tavis Ford in 1140.",
    ], [(0, 2)]),
    ("seton-wharf", [
        "Fishermen settled the inlet and called it Seton Wharf.",
        "A customs house followed the first warehouses.",
        "The crown renamed the harbour Queensport in 1689.",
        "Sloops from Queensport traded with Port Leven in 1702.",
    ], [(0, 2)]),
    ("withersfield", [
        "Parish registers record the hamlet as Withersfield.",
        "A new lord enclosed the commons.",
        "The village answered to the name Eastonby from 1352.",
        "Carts from Eastonby carried wool to Maldon Fair in 1360.",
    ], [(0, 2)]),
    ("greywater-mill", [
        "The first charter names the mill Greywater Mill.",
        "Floods broke the wheel more than once.",
        "Millers rebuilt it as Stonebrook in 1477.",
        "Flour from Stonebrook fed the abbey at Welden in 1480.",
    ], [(0, 2)]),
    ("saddler-green", [
        "Old deeds describe the quarter as Saddler Green.",
        "Tanneries and forges crowded its lanes.",
        "City planners renamed the district Ironside in 1906.",
        "Trams from Ironside reached Falton Square by 1910.",
    ], [(0, 2)]),
    ("meath-caravans", [
        "Caravans from Meath crossed the high passes in 1310.",
        "Traders from Orvell met them at the summer fair in 1311.",
        "The toll house at Brenn collected silver in 1315.",
        "Snow closed the road each winter.",
        "Wagons from Orvell reached Meath in 1320 by the coast road.",
    ], []),
    ("calden-regatta", [
        "Rowers from Calden raced crews from Bexley in 1868.",
        "The regatta drew thousands to the river.",
        "Oarsmen of Bexley took the cup home in 1874.",
        "Crowds from Harwick filled the banks in 1880.",
        "Judges from Calden watched the final heat in 1881.",
    ], []),
    ("selwick-harbor", [
        "Pilots from Selwick guided ships into Darrow Bay in 1701.",
        "Customs men from Darrow Bay counted barrels from Selwick in 1703.",
        "Keepers at Cape Inver lit the first lamp in 1705.",
        "Storms wrecked a brig from Selwick near Cape Inver in 1708.",
    ], []),
    ("hollow-farm", [
        "Tithe maps mark the estate as Hollow Farm.",
        "Its orchards supplied the whole valley.",
        "The heirs renamed the property Larkrise in 1874.",
        "Cider from Larkrise won a medal at Exeter in 1889.",
    ], [(0, 2)]),
    ("dunberg-inn", [
        "Coach drivers knew the crossroads inn as the Dunberg Arms.",
        "A fire gutted the stables one spring.",
        "The rebuilt house reopened as the Silver Swan in 1763.",
        "Travellers from Harwich praised the Silver Swan through 1790.",
    ], [(0, 2)]),
    ("keldwater", [
        "Old pilots called the strait Keldwater on their runs north.",
        "Currents there sank many small boats.",
        "Charts issued in 1851 renamed the passage Vane Sound.",
        "Steamers from Vane Sound reached Tornby in 1860.",
    ], [(0, 2)]),
    ("orlan-ledger", [
        "Clerks from Fenbridge audited the mint at Orlan in 1511.",
        "The ledgers filled three iron chests.",
        "Assayers from Orlan weighed silver for Fenbridge in 1513.",
        "Couriers from Belworth carried the seals to Orlan in 1516.",
    ], []),
]


def build_articles() -> list[CorpusArticle]:
    articles = []
    for source_id, sentences, positives in ARTICLES:
        articles.append(CorpusArticle(
            source_id=source_id,
            text=" ".join(sentences),
            positives=tuple(positives),
        ))
    return articles


def validate(articles: list[CorpusArticle]) -> tuple[Counter, Counter]:
    positive_by_distance: Counter = Counter()
    pool_by_distance: Counter = Counter()
    failures = []
    for (source_id, sentences, positives), article in zip(ARTICLES, articles):
        doc = analyze(article.text, article.source_id)
        if len(doc.sentences) != len(sentences):
            failures.append(f"{source_id}: splitter found {len(doc.sentences)} sentences, "
                            f"expected {len(sentences)}")
            continue
        candidates = {(c.first_sentence, c.last_sentence): c for c in
                      extract_candidates(doc, 2)}
        covered = set()
        for window in positives:
            if window not in candidates:
                failures.append(f"{source_id}: positive {window} is not a candidate; "
                                f"candidates: {sorted(candidates)}")
            else:
                positive_by_distance[window[1] - window[0]] += 1
                covered.update(range(window[0], window[1] + 1))
        for (first, last), candidate in candidates.items():
            if (first, last) in positives:
                continue
            if covered.intersection(range(first, last + 1)):
                continue
            pool_by_distance[candidate.distance] += 1
    if failures:
        for failure in failures:
            print("FAIL:", failure, file=sys.stderr)
        sys.exit(1)
    return positive_by_distance, pool_by_distance


def main() -> None:
    articles = build_articles()
    positive_counts, pool_counts = validate(articles)
    print(f"{len(articles)} articles")
    for d in (0, 1, 2):
        print(f"distance {d}: {positive_counts[d]} positives, "
              f"{pool_counts[d]} eligible negatives")
    datasets = build_datasets(articles, ratio=1.0, seed=0)
    for tag, dataset in datasets.items():
        print(f"dataset {tag}: {dataset.positives} positives, {dataset.negatives} negatives")

    out = Path(__file__).resolve().parent.parent / "src" / "nameline" / "fixtures" / "corpus.jsonl"
    dump_corpus(articles, out)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
