"""Writes the Spider-format tables.json used by the test fixtures."""
import json
import sys

DBS = {
    "concert_singer": {
        "stadium": ["Stadium_ID:number", "Location:text", "Name:text", "Capacity:number",
                    "Highest:number", "Lowest:number", "Average:number"],
        "singer": ["Singer_ID:number", "Name:text", "Country:text", "Song_Name:text",
                   "Song_release_year:text", "Age:number", "Is_male:others"],
        "concert": ["concert_ID:number", "concert_Name:text", "Theme:text", "Stadium_ID:text",
                    "Year:text"],
        "singer_in_concert": ["concert_ID:number", "Singer_ID:text"],
        "_pk": ["stadium.Stadium_ID", "singer.Singer_ID", "concert.concert_ID",
                "singer_in_concert.concert_ID"],
        "_fk": [("concert.Stadium_ID", "stadium.Stadium_ID"),
                ("singer_in_concert.Singer_ID", "singer.Singer_ID"),
                ("singer_in_concert.concert_ID", "concert.concert_ID")],
    },
    "pets_1": {
        "Student": ["StuID:number", "LName:text", "Fname:text", "Age:number", "Sex:text",
                    "Major:number", "Advisor:number", "city_code:text"],
        "Has_Pet": ["StuID:number", "PetID:number"],
        "Pets": ["PetID:number", "PetType:text", "pet_age:number", "weight:number"],
        "_pk": ["Student.StuID", "Pets.PetID"],
        "_fk": [("Has_Pet.StuID", "Student.StuID"), ("Has_Pet.PetID", "Pets.PetID")],
    },
    "flight_2": {
        "airlines": ["uid:number", "Airline:text", "Abbreviation:text", "Country:text"],
        "airports": ["City:text", "AirportCode:text", "AirportName:text", "Country:text",
                     "CountryAbbrev:text"],
        "flights": ["Airline:number", "FlightNo:number", "SourceAirport:text",
                    "DestAirport:text"],
        "_pk": ["airlines.uid", "airports.AirportCode", "flights.Airline"],
        "_fk": [("flights.DestAirport", "airports.AirportCode"),
                ("flights.SourceAirport", "airports.AirportCode")],
    },
    "employee_hire_evaluation": {
        "employee": ["Employee_ID:number", "Name:text", "Age:number", "City:text"],
        "shop": ["Shop_ID:number", "Name:text", "Location:text", "District:text",
                 "Number_products:number", "Manager_name:text"],
        "hiring": ["Shop_ID:number", "Employee_ID:number", "Start_from:text",
                   "Is_full_time:others"],
        "evaluation": ["Employee_ID:text", "Year_awarded:text", "Bonus:number"],
        "_pk": ["employee.Employee_ID", "shop.Shop_ID", "hiring.Employee_ID",
                "evaluation.Employee_ID"],
        "_fk": [("hiring.Employee_ID", "employee.Employee_ID"),
                ("hiring.Shop_ID", "shop.Shop_ID"),
                ("evaluation.Employee_ID", "employee.Employee_ID")],
    },
    "tvshow": {
        "TV_Channel": ["id:text", "series_name:text", "Country:text", "Language:text",
                       "Content:text", "Pixel_aspect_ratio_PAR:text", "Hight_definition_TV:text",
                       "Pay_per_view_PPV:text", "Package_Option:text"],
        "TV_series": ["id:number", "Episode:text", "Air_Date:text", "Rating:text",
                      "Share:number", "Viewers_m:text", "Weekly_Rank:number", "Channel:text"],
        "Cartoon": ["id:number", "Title:text", "Directed_by:text", "Written_by:text",
                    "Original_air_date:text", "Production_code:number", "Channel:text"],
        "_pk": ["TV_Channel.id", "TV_series.id", "Cartoon.id"],
        "_fk": [("TV_series.Channel", "TV_Channel.id"), ("Cartoon.Channel", "TV_Channel.id")],
    },
    "world_1": {
        "city": ["ID:number", "Name:text", "CountryCode:text", "District:text",
                 "Population:number"],
        "country": ["Code:text", "Name:text", "Continent:text", "Region:text",
                    "SurfaceArea:number", "IndepYear:number", "Population:number",
                    "LifeExpectancy:number", "GNP:number", "GNPOld:number", "LocalName:text",
                    "GovernmentForm:text", "HeadOfState:text", "Capital:number", "Code2:text"],
        "countrylanguage": ["CountryCode:text", "Language:text", "IsOfficial:text",
                            "Percentage:number"],
        "_pk": ["city.ID", "country.Code", "countrylanguage.CountryCode"],
        "_fk": [("city.CountryCode", "country.Code"),
                ("countrylanguage.CountryCode", "country.Code")],
    },
    "car_1": {
        "continents": ["ContId:number", "Continent:text"],
        "countries": ["CountryId:number", "CountryName:text", "Continent:number"],
        "car_makers": ["Id:number", "Maker:text", "FullName:text", "Country:text"],
        "model_list": ["ModelId:number", "Maker:number", "Model:text"],
        "car_names": ["MakeId:number", "Model:text", "Make:text"],
        "cars_data": ["Id:number", "MPG:text", "Cylinders:number", "Edispl:number",
                      "Horsepower:text", "Weight:number", "Accelerate:number", "Year:number"],
        "_pk": ["continents.ContId", "countries.CountryId", "car_makers.Id", "model_list.ModelId",
                "car_names.MakeId", "cars_data.Id"],
        "_fk": [("countries.Continent", "continents.ContId"),
                ("car_makers.Country", "countries.CountryId"),
                ("model_list.Maker", "car_makers.Id"),
                ("car_names.Model", "model_list.Model"),
                ("cars_data.Id", "car_names.MakeId")],
    },
}


def human(name):
    return name.replace("_", " ").lower()


def build():
    out = []
    for db_id, spec in DBS.items():
        tables = [t for t in spec if not t.startswith("_")]
        cols_orig = [[-1, "*"]]
        types = ["text"]
        index = {}
        for ti, t in enumerate(tables):
            for c in spec[t]:
                name, ty = c.split(":")
                index[f"{t}.{name}"] = len(cols_orig)
                cols_orig.append([ti, name])
                types.append(ty)
        out.append({
            "db_id": db_id,
            "table_names_original": tables,
            "table_names": [human(t) for t in tables],
            "column_names_original": cols_orig,
            "column_names": [[ti, human(c) if ti >= 0 else c] for ti, c in cols_orig],
            "column_types": types,
            "primary_keys": [index[k] for k in spec["_pk"]],
            "foreign_keys": [[index[a], index[b]] for a, b in spec["_fk"]],
        })
    return out


if __name__ == "__main__":
    json.dump(build(), open(sys.argv[1], "w", encoding="utf-8"), indent=1, ensure_ascii=False)
