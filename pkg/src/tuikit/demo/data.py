"""Fixed sample data for the demo screens (invented fixtures)."""

from __future__ import annotations

GRID_COLUMNS = [("ID", 4), ("Name", 16), ("Email", 24), ("Age", 3), ("City", 12)]

GRID_ROWS = [
    ["101", "Alice Johnson", "alice@example.com", "34", "Boston"],
    ["102", "Bob Smith", "bob.smith@example.com", "28", "Chicago"],
    ["103", "Carla Gomez", "carla.g@example.com", "41", "Madrid"],
    ["104", "David Lee", "dlee@example.com", "25", "Seoul"],
    ["105", "Eva Novak", "eva.novak@example.com", "37", "Prague"],
    ["106", "Farid Haddad", "farid@example.com", "45", "Cairo"],
    ["107", "Grace Kim", "grace.kim@example.com", "30", "Vancouver"],
    ["108", "Hiro Tanaka", "hiro.t@example.com", "52", "Osaka"],
    ["109", "Ines Silva", "ines.silva@example.com", "29", "Lisbon"],
    ["110", "Jonas Berg", "jonas.berg@example.com", "48", "Stockholm"],
]

COUNTRIES = [
    "Argentina", "Australia", "Brazil", "Canada", "Egypt", "France", "Germany",
    "India", "Italy", "Japan", "Mexico", "Norway", "Spain", "Sweden",
    "United Kingdom", "United States",
]

LANGUAGES = ["English", "Arabic", "French", "German", "Spanish"]
