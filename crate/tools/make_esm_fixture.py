"""Builds the (gold, pred) pair fixture used by the exact-set-match oracle test.

Output: TSV with columns kind, db_id, gold, pred. Labels are produced separately by
tools/esm_oracle.py, which runs the reference Spider evaluator over this file.
"""
import re
import sys

# (db_id, gold, [(kind, pred), ...])
BASES = [
    ("concert_singer", "SELECT count(*) FROM singer", [
        ("case", "select COUNT( * )  from Singer"),
        ("table-swap", "SELECT count(*) FROM stadium"),
        ("column-change", "SELECT count(Singer_ID) FROM singer"),
        ("added-clause", "SELECT count(*) FROM singer WHERE age  >  20"),
    ]),
    ("concert_singer", "SELECT song_name FROM singer WHERE age  >  (SELECT avg(age) FROM singer)", [
        ("nested-agg-change", "SELECT Song_Name FROM singer WHERE Age > (SELECT max(Age) FROM singer)"),
        ("op-change", "SELECT song_name FROM singer WHERE age  <  (SELECT avg(age) FROM singer)"),
        ("column-change", "SELECT name FROM singer WHERE age  >  (SELECT avg(age) FROM singer)"),
        ("dropped-clause", "SELECT song_name FROM singer"),
        ("nested-literal", "SELECT song_name FROM singer WHERE age  >  30"),
    ]),
    ("concert_singer", "SELECT name ,  country ,  age FROM singer ORDER BY age DESC", [
        ("column-reorder", "SELECT age, name, country FROM singer ORDER BY age DESC"),
        ("direction-flip", "SELECT name ,  country ,  age FROM singer ORDER BY age ASC"),
        ("direction-default", "SELECT name ,  country ,  age FROM singer ORDER BY age"),
        ("dropped-clause", "SELECT name ,  country ,  age FROM singer"),
    ]),
    ("concert_singer", "SELECT avg(age) ,  min(age) ,  max(age) FROM singer WHERE country  =  'France'", [
        ("value-change", "SELECT avg(age) ,  min(age) ,  max(age) FROM singer WHERE country  =  'Germany'"),
        ("column-reorder", "SELECT max(age), avg(age), min(age) FROM singer WHERE country = 'France'"),
        ("dropped-clause", "SELECT avg(age) ,  min(age) ,  max(age) FROM singer"),
        ("op-change", "SELECT avg(age) ,  min(age) ,  max(age) FROM singer WHERE country  !=  'France'"),
    ]),
    ("concert_singer", "SELECT T2.name ,  count(*) FROM concert AS T1 JOIN stadium AS T2 ON T1.stadium_id  =  T2.stadium_id GROUP BY T1.stadium_id", [
        ("alias-rename", "SELECT b.name ,  count(*) FROM concert AS a JOIN stadium AS b ON a.stadium_id  =  b.stadium_id GROUP BY a.stadium_id"),
        ("join-reorder", "SELECT T2.name ,  count(*) FROM stadium AS T2 JOIN concert AS T1 ON T1.stadium_id  =  T2.stadium_id GROUP BY T1.stadium_id"),
        ("foreign-key-column", "SELECT T2.name ,  count(*) FROM concert AS T1 JOIN stadium AS T2 ON T1.stadium_id  =  T2.stadium_id GROUP BY T2.stadium_id"),
        ("dropped-on", "SELECT T2.name ,  count(*) FROM concert AS T1 JOIN stadium AS T2 GROUP BY T1.stadium_id"),
        ("dropped-clause", "SELECT T2.name ,  count(*) FROM concert AS T1 JOIN stadium AS T2 ON T1.stadium_id  =  T2.stadium_id"),
    ]),
    ("concert_singer", "SELECT name FROM stadium WHERE stadium_id NOT IN (SELECT stadium_id FROM concert)", [
        ("negation-drop", "SELECT name FROM stadium WHERE stadium_id IN (SELECT stadium_id FROM concert)"),
        ("set-op-rewrite", "SELECT name FROM stadium EXCEPT SELECT T2.name FROM concert AS T1 JOIN stadium AS T2 ON T1.stadium_id  =  T2.stadium_id"),
        ("case", "select NAME from STADIUM where STADIUM_ID not in (select STADIUM_ID from CONCERT)"),
    ]),
    ("concert_singer", "SELECT country FROM singer WHERE age  >  40 INTERSECT SELECT country FROM singer WHERE age  <  30", [
        ("set-operand-swap", "SELECT country FROM singer WHERE age  <  30 INTERSECT SELECT country FROM singer WHERE age  >  40"),
        ("value-change", "SELECT country FROM singer WHERE age  >  45 INTERSECT SELECT country FROM singer WHERE age  <  25"),
        ("set-op-change", "SELECT country FROM singer WHERE age  >  40 UNION SELECT country FROM singer WHERE age  <  30"),
        ("dropped-set-op", "SELECT country FROM singer WHERE age  >  40"),
    ]),
    ("concert_singer", "SELECT DISTINCT country FROM singer WHERE age  >  20", [
        ("distinct-drop", "SELECT country FROM singer WHERE age  >  20"),
        ("value-change", "SELECT DISTINCT country FROM singer WHERE age  >  35"),
    ]),
    ("concert_singer", "SELECT concert_name ,  theme ,  count(*) FROM concert AS T1 JOIN singer_in_concert AS T2 ON T1.concert_id  =  T2.concert_id GROUP BY T1.concert_id", [
        ("column-reorder", "SELECT count(*), theme, concert_name FROM concert AS T1 JOIN singer_in_concert AS T2 ON T1.concert_id = T2.concert_id GROUP BY T1.concert_id"),
        ("group-change", "SELECT concert_name ,  theme ,  count(*) FROM concert AS T1 JOIN singer_in_concert AS T2 ON T1.concert_id  =  T2.concert_id GROUP BY T1.theme"),
    ]),
    ("concert_singer", "SELECT T2.name FROM singer_in_concert AS T1 JOIN singer AS T2 ON T1.singer_id  =  T2.singer_id JOIN concert AS T3 ON T1.concert_id  =  T3.concert_id WHERE T3.year  =  2014", [
        ("alias-rename", "SELECT s.name FROM singer_in_concert AS sc JOIN singer AS s ON sc.singer_id  =  s.singer_id JOIN concert AS c ON sc.concert_id  =  c.concert_id WHERE c.year  =  2014"),
        ("value-change", "SELECT T2.name FROM singer_in_concert AS T1 JOIN singer AS T2 ON T1.singer_id  =  T2.singer_id JOIN concert AS T3 ON T1.concert_id  =  T3.concert_id WHERE T3.year  =  2015"),
        ("dropped-join", "SELECT T2.name FROM singer_in_concert AS T1 JOIN singer AS T2 ON T1.singer_id  =  T2.singer_id WHERE T1.concert_id  =  2014"),
    ]),
    ("concert_singer", "SELECT name FROM singer WHERE song_name LIKE '%Hey%'", [
        ("value-change", "SELECT name FROM singer WHERE song_name LIKE '%Love%'"),
        ("op-change", "SELECT name FROM singer WHERE song_name  =  'Hey'"),
    ]),
    ("concert_singer", "SELECT YEAR FROM concert GROUP BY YEAR ORDER BY count(*) DESC LIMIT 1", [
        ("limit-change", "SELECT YEAR FROM concert GROUP BY YEAR ORDER BY count(*) DESC LIMIT 3"),
        ("dropped-limit", "SELECT YEAR FROM concert GROUP BY YEAR ORDER BY count(*) DESC"),
        ("direction-flip", "SELECT YEAR FROM concert GROUP BY YEAR ORDER BY count(*) ASC LIMIT 1"),
    ]),
    ("concert_singer", "SELECT location ,  name FROM stadium WHERE capacity BETWEEN 5000 AND 10000", [
        ("value-change", "SELECT location ,  name FROM stadium WHERE capacity BETWEEN 1 AND 2"),
        ("op-change", "SELECT location ,  name FROM stadium WHERE capacity  >  5000"),
    ]),
    ("concert_singer", "SELECT max(capacity) ,  average FROM stadium", [
        ("agg-change", "SELECT min(capacity) ,  average FROM stadium"),
        ("column-reorder", "SELECT average, max(capacity) FROM stadium"),
    ]),
    ("concert_singer", "SELECT name ,  capacity FROM stadium ORDER BY average DESC LIMIT 1", [
        ("order-key-change", "SELECT name ,  capacity FROM stadium ORDER BY capacity DESC LIMIT 1"),
    ]),
    ("pets_1", "SELECT count(*) ,  T1.stuid FROM student AS T1 JOIN has_pet AS T2 ON T1.stuid  =  T2.stuid GROUP BY T1.stuid", [
        ("column-reorder", "SELECT T1.stuid, count(*) FROM student AS T1 JOIN has_pet AS T2 ON T1.stuid = T2.stuid GROUP BY T1.stuid"),
        ("foreign-key-column", "SELECT count(*) ,  T2.stuid FROM student AS T1 JOIN has_pet AS T2 ON T1.stuid  =  T2.stuid GROUP BY T2.stuid"),
        ("alias-rename", "SELECT count(*) ,  s.stuid FROM student AS s JOIN has_pet AS h ON s.stuid  =  h.stuid GROUP BY s.stuid"),
        ("dropped-clause", "SELECT count(*) ,  T1.stuid FROM student AS T1 JOIN has_pet AS T2 ON T1.stuid  =  T2.stuid"),
    ]),
    ("pets_1", "SELECT count(*) FROM pets WHERE weight  >  10", [
        ("value-change", "SELECT count(*) FROM pets WHERE weight  >  99"),
        ("column-change", "SELECT count(*) FROM pets WHERE pet_age  >  10"),
    ]),
    ("pets_1", "SELECT T1.fname FROM student AS T1 JOIN has_pet AS T2 ON T1.stuid  =  T2.stuid JOIN pets AS T3 ON T3.petid  =  T2.petid WHERE T3.pettype  =  'cat' INTERSECT SELECT T1.fname FROM student AS T1 JOIN has_pet AS T2 ON T1.stuid  =  T2.stuid JOIN pets AS T3 ON T3.petid  =  T2.petid WHERE T3.pettype  =  'dog'", [
        ("set-op-change", "SELECT T1.fname FROM student AS T1 JOIN has_pet AS T2 ON T1.stuid  =  T2.stuid JOIN pets AS T3 ON T3.petid  =  T2.petid WHERE T3.pettype  =  'cat' UNION SELECT T1.fname FROM student AS T1 JOIN has_pet AS T2 ON T1.stuid  =  T2.stuid JOIN pets AS T3 ON T3.petid  =  T2.petid WHERE T3.pettype  =  'dog'"),
        ("set-op-to-or", "SELECT T1.fname FROM student AS T1 JOIN has_pet AS T2 ON T1.stuid  =  T2.stuid JOIN pets AS T3 ON T3.petid  =  T2.petid WHERE T3.pettype  =  'cat' OR T3.pettype  =  'dog'"),
    ]),
    ("pets_1", "SELECT major ,  age FROM student WHERE stuid NOT IN (SELECT T1.stuid FROM student AS T1 JOIN has_pet AS T2 ON T1.stuid  =  T2.stuid JOIN pets AS T3 ON T3.petid  =  T2.petid WHERE T3.pettype  =  'cat')", [
        ("nested-value-change", "SELECT major ,  age FROM student WHERE stuid NOT IN (SELECT T1.stuid FROM student AS T1 JOIN has_pet AS T2 ON T1.stuid  =  T2.stuid JOIN pets AS T3 ON T3.petid  =  T2.petid WHERE T3.pettype  =  'dog')"),
        ("column-reorder", "SELECT age, major FROM student WHERE stuid NOT IN (SELECT T1.stuid FROM student AS T1 JOIN has_pet AS T2 ON T1.stuid  =  T2.stuid JOIN pets AS T3 ON T3.petid  =  T2.petid WHERE T3.pettype  =  'cat')"),
        ("nested-simplified", "SELECT major ,  age FROM student WHERE stuid NOT IN (SELECT stuid FROM has_pet)"),
    ]),
    ("pets_1", "SELECT avg(weight) ,  pettype FROM pets GROUP BY pettype", [
        ("agg-change", "SELECT max(weight) ,  pettype FROM pets GROUP BY pettype"),
        ("column-reorder", "SELECT pettype, avg(weight) FROM pets GROUP BY pettype"),
    ]),
    ("pets_1", "SELECT count(DISTINCT pettype) FROM pets", [
        ("distinct-drop", "SELECT count(pettype) FROM pets"),
        ("column-change", "SELECT count(DISTINCT petid) FROM pets"),
    ]),
    ("pets_1", "SELECT fname ,  age FROM student WHERE sex  =  'F' AND age  >  20", [
        ("conjunct-reorder", "SELECT fname ,  age FROM student WHERE age  >  20 AND sex  =  'F'"),
        ("connector-change", "SELECT fname ,  age FROM student WHERE sex  =  'F' OR age  >  20"),
        ("value-change", "SELECT fname ,  age FROM student WHERE sex  =  'M' AND age  >  18"),
        ("dropped-conjunct", "SELECT fname ,  age FROM student WHERE sex  =  'F'"),
    ]),
    ("pets_1", "SELECT stuid FROM student EXCEPT SELECT stuid FROM has_pet", [
        ("set-operand-swap", "SELECT stuid FROM has_pet EXCEPT SELECT stuid FROM student"),
        ("case", "select STUID from STUDENT except select STUID from HAS_PET"),
    ]),
    ("pets_1", "SELECT max(weight) ,  petType FROM pets GROUP BY petType", [
        ("identity-spacing", "SELECT max(weight),petType FROM pets GROUP BY petType"),
    ]),
    ("flight_2", "SELECT count(*) FROM FLIGHTS AS T1 JOIN AIRPORTS AS T2 ON T1.DestAirport  =  T2.AirportCode JOIN AIRLINES AS T3 ON T3.uid  =  T1.Airline WHERE T2.City  =  \"Aberdeen\" AND T3.Airline  =  \"United Airlines\"", [
        ("conjunct-reorder", "SELECT count(*) FROM FLIGHTS AS T1 JOIN AIRPORTS AS T2 ON T1.DestAirport  =  T2.AirportCode JOIN AIRLINES AS T3 ON T3.uid  =  T1.Airline WHERE T3.Airline  =  \"United Airlines\" AND T2.City  =  \"Aberdeen\""),
        ("value-change", "SELECT count(*) FROM FLIGHTS AS T1 JOIN AIRPORTS AS T2 ON T1.DestAirport  =  T2.AirportCode JOIN AIRLINES AS T3 ON T3.uid  =  T1.Airline WHERE T2.City  =  \"Boston\" AND T3.Airline  =  \"Delta Airlines\""),
        ("dropped-conjunct", "SELECT count(*) FROM FLIGHTS AS T1 JOIN AIRPORTS AS T2 ON T1.DestAirport  =  T2.AirportCode JOIN AIRLINES AS T3 ON T3.uid  =  T1.Airline WHERE T2.City  =  \"Aberdeen\""),
        ("alias-rename", "SELECT count(*) FROM flights AS f JOIN airports AS a ON f.DestAirport  =  a.AirportCode JOIN airlines AS l ON l.uid  =  f.Airline WHERE a.City  =  \"Aberdeen\" AND l.Airline  =  \"United Airlines\""),
        ("source-vs-dest", "SELECT count(*) FROM FLIGHTS AS T1 JOIN AIRPORTS AS T2 ON T1.SourceAirport  =  T2.AirportCode JOIN AIRLINES AS T3 ON T3.uid  =  T1.Airline WHERE T2.City  =  \"Aberdeen\" AND T3.Airline  =  \"United Airlines\""),
    ]),
    ("flight_2", "SELECT count(*) FROM FLIGHTS AS T1 JOIN AIRPORTS AS T2 ON T1.DestAirport  =  T2.AirportCode WHERE T2.City  =  \"Abilene\"", [
        ("masked-value", "SELECT count(*) FROM FLIGHTS AS T1 JOIN AIRPORTS AS T2 ON T1.DestAirport  =  T2.AirportCode WHERE T2.City  =  \"terminal\""),
        ("table-swap", "SELECT Count(*) FROM airlines JOIN airports WHERE airports.City = \"Abilene\""),
    ]),
    ("flight_2", "SELECT Count(*) FROM airlines JOIN airports WHERE airports.City = \"Abilene\"", [
        ("masked-value", "SELECT Count(*) FROM airlines JOIN airports WHERE airports.City = \"terminal\""),
        ("join-reorder", "SELECT count(*) FROM airports JOIN airlines WHERE airports.city = \"Abilene\""),
    ]),
    ("flight_2", "SELECT AirportCode FROM AIRPORTS WHERE AirportCode NOT IN (SELECT SourceAirport FROM Flights UNION SELECT DestAirport FROM Flights)", [
        ("nested-set-op-change", "SELECT AirportCode FROM AIRPORTS WHERE AirportCode NOT IN (SELECT SourceAirport FROM Flights INTERSECT SELECT DestAirport FROM Flights)"),
        ("nested-simplified", "SELECT AirportCode FROM AIRPORTS WHERE AirportCode NOT IN (SELECT SourceAirport FROM Flights)"),
    ]),
    ("flight_2", "SELECT T1.Airline FROM AIRLINES AS T1 JOIN FLIGHTS AS T2 ON T1.uid  =  T2.Airline GROUP BY T1.Airline HAVING count(*)  >  10", [
        ("value-change", "SELECT T1.Airline FROM AIRLINES AS T1 JOIN FLIGHTS AS T2 ON T1.uid  =  T2.Airline GROUP BY T1.Airline HAVING count(*)  >  2"),
        ("op-change", "SELECT T1.Airline FROM AIRLINES AS T1 JOIN FLIGHTS AS T2 ON T1.uid  =  T2.Airline GROUP BY T1.Airline HAVING count(*)  <  10"),
        ("dropped-having", "SELECT T1.Airline FROM AIRLINES AS T1 JOIN FLIGHTS AS T2 ON T1.uid  =  T2.Airline GROUP BY T1.Airline"),
    ]),
    ("flight_2", "SELECT count(*) FROM AIRLINES WHERE Country  =  \"USA\"", [
        ("value-change", "SELECT count(*) FROM AIRLINES WHERE Country  =  \"Brazil\""),
        ("single-quote", "SELECT count(*) FROM AIRLINES WHERE Country  =  'USA'"),
    ]),
    ("flight_2", "SELECT Airline FROM AIRLINES WHERE Abbreviation  =  \"UAL\"", [
        ("column-change", "SELECT Abbreviation FROM AIRLINES WHERE Airline  =  \"UAL\""),
    ]),
    ("flight_2", "SELECT City ,  Country FROM AIRPORTS WHERE AirportName  =  \"Alton\"", [
        ("column-reorder", "SELECT Country, City FROM AIRPORTS WHERE AirportName = \"Alton\""),
        ("column-drop", "SELECT City FROM AIRPORTS WHERE AirportName  =  \"Alton\""),
    ]),
    ("flight_2", "SELECT T1.City FROM AIRPORTS AS T1 JOIN FLIGHTS AS T2 ON T1.AirportCode  =  T2.DestAirport GROUP BY T1.City ORDER BY count(*) DESC LIMIT 1", [
        ("alias-rename", "SELECT x.City FROM AIRPORTS AS x JOIN FLIGHTS AS y ON x.AirportCode  =  y.DestAirport GROUP BY x.City ORDER BY count(*) DESC LIMIT 1"),
        ("group-change", "SELECT T1.City FROM AIRPORTS AS T1 JOIN FLIGHTS AS T2 ON T1.AirportCode  =  T2.DestAirport GROUP BY T2.DestAirport ORDER BY count(*) DESC LIMIT 1"),
    ]),
    ("employee_hire_evaluation", "SELECT t2.name FROM hiring AS t1 JOIN shop AS t2 ON t1.shop_id  =  t2.shop_id GROUP BY t1.shop_id ORDER BY count(*) DESC LIMIT 1", [
        ("case", "SELECT T2.Name FROM HIRING AS T1 JOIN SHOP AS T2 ON T1.Shop_ID  =  T2.Shop_ID GROUP BY T1.Shop_ID ORDER BY COUNT(*) DESC LIMIT 1"),
        ("foreign-key-column", "SELECT t2.name FROM hiring AS t1 JOIN shop AS t2 ON t1.shop_id  =  t2.shop_id GROUP BY t2.shop_id ORDER BY count(*) DESC LIMIT 1"),
        ("dropped-limit", "SELECT t2.name FROM hiring AS t1 JOIN shop AS t2 ON t1.shop_id  =  t2.shop_id GROUP BY t1.shop_id ORDER BY count(*) DESC"),
        ("direction-flip", "SELECT t2.name FROM hiring AS t1 JOIN shop AS t2 ON t1.shop_id  =  t2.shop_id GROUP BY t1.shop_id ORDER BY count(*) ASC LIMIT 1"),
        ("failed-prediction", "SELECT t2.name FROM shop AS t2 ORDER BY t2.number_products DESC LIMIT 1"),
    ]),
    ("employee_hire_evaluation", "SELECT name FROM employee ORDER BY age", [
        ("direction-explicit", "SELECT name FROM employee ORDER BY age ASC"),
        ("direction-flip", "SELECT name FROM employee ORDER BY age DESC"),
    ]),
    ("employee_hire_evaluation", "SELECT count(*) ,  city FROM employee GROUP BY city", [
        ("column-reorder", "SELECT city, count(*) FROM employee GROUP BY city"),
        ("dropped-clause", "SELECT count(*) ,  city FROM employee"),
    ]),
    ("employee_hire_evaluation", "SELECT name FROM employee WHERE Employee_ID NOT IN (SELECT Employee_ID FROM evaluation)", [
        ("negation-drop", "SELECT name FROM employee WHERE Employee_ID IN (SELECT Employee_ID FROM evaluation)"),
        ("nested-table-change", "SELECT name FROM employee WHERE Employee_ID NOT IN (SELECT Employee_ID FROM hiring)"),
    ]),
    ("employee_hire_evaluation", "SELECT sum(bonus) FROM evaluation", [
        ("agg-change", "SELECT avg(bonus) FROM evaluation"),
    ]),
    ("employee_hire_evaluation", "SELECT t1.name FROM employee AS t1 JOIN evaluation AS t2 ON t1.Employee_ID  =  t2.Employee_ID ORDER BY t2.bonus DESC LIMIT 1", [
        ("alias-rename", "SELECT e.name FROM employee AS e JOIN evaluation AS v ON e.Employee_ID  =  v.Employee_ID ORDER BY v.bonus DESC LIMIT 1"),
        ("failed-prediction", "SELECT t1.name FROM employee AS t1 JOIN evaluation AS t2 ON t1.Employee_ID  =  t2.Employee_ID GROUP BY t2.Employee_ID ORDER BY sum(t2.bonus) DESC LIMIT 1"),
    ]),
    ("employee_hire_evaluation", "SELECT name FROM shop WHERE number_products  >  (SELECT avg(number_products) FROM shop)", [
        ("nested-literal", "SELECT name FROM shop WHERE number_products  >  5000"),
    ]),
    ("employee_hire_evaluation", "SELECT district FROM shop WHERE Number_products  <  3000 INTERSECT SELECT district FROM shop WHERE Number_products  >  10000", [
        ("value-change", "SELECT district FROM shop WHERE Number_products  <  1 INTERSECT SELECT district FROM shop WHERE Number_products  >  2"),
        ("set-op-to-and", "SELECT district FROM shop WHERE Number_products  <  3000 AND Number_products  >  10000"),
    ]),
    ("employee_hire_evaluation", "SELECT count(DISTINCT LOCATION) FROM shop", [
        ("distinct-drop", "SELECT count(LOCATION) FROM shop"),
    ]),
    ("employee_hire_evaluation", "SELECT Manager_name ,  district FROM shop ORDER BY number_products DESC LIMIT 1", [
        ("column-reorder", "SELECT district, Manager_name FROM shop ORDER BY number_products DESC LIMIT 1"),
    ]),
    ("tvshow", "SELECT T1.series_name FROM TV_Channel AS T1 JOIN Cartoon AS T2 ON T1.id = T2.Channel WHERE T2.Title = \"The Rise of the Blue Beetle!\"", [
        ("masked-value", "SELECT T1.series_name FROM TV_Channel AS T1 JOIN Cartoon AS T2 ON T1.id = T2.Channel WHERE T2.Title = \"terminal\""),
        ("column-change", "SELECT T1.Country FROM TV_Channel AS T1 JOIN Cartoon AS T2 ON T1.id = T2.Channel WHERE T2.Title = \"The Rise of the Blue Beetle!\""),
        ("alias-rename", "SELECT c.series_name FROM TV_Channel AS c JOIN Cartoon AS k ON c.id = k.Channel WHERE k.Title = \"The Rise of the Blue Beetle!\""),
    ]),
    ("tvshow", "SELECT Title FROM Cartoon ORDER BY title", [
        ("case", "select TITLE from CARTOON order by TITLE"),
    ]),
    ("tvshow", "SELECT count(*) FROM cartoon WHERE Written_by  =  \"Joseph Kuhr\"", [
        ("value-change", "SELECT count(*) FROM cartoon WHERE Written_by  =  \"Todd Casey\""),
        ("column-change", "SELECT count(*) FROM cartoon WHERE Directed_by  =  \"Joseph Kuhr\""),
    ]),
    ("tvshow", "SELECT Episode FROM TV_series ORDER BY rating", [
        ("order-key-change", "SELECT Episode FROM TV_series ORDER BY share"),
    ]),
    ("tvshow", "SELECT max(SHARE) , min(SHARE) FROM TV_series", [
        ("column-reorder", "SELECT min(SHARE), max(SHARE) FROM TV_series"),
    ]),
    ("tvshow", "SELECT Country FROM TV_Channel EXCEPT SELECT T1.Country FROM TV_Channel AS T1 JOIN cartoon AS T2 ON T1.id = T2.Channel WHERE T2.written_by  =  'Todd Casey'", [
        ("value-change", "SELECT Country FROM TV_Channel EXCEPT SELECT T1.Country FROM TV_Channel AS T1 JOIN cartoon AS T2 ON T1.id = T2.Channel WHERE T2.written_by  =  'Someone'"),
        ("set-op-to-not-in", "SELECT Country FROM TV_Channel WHERE id NOT IN (SELECT Channel FROM cartoon WHERE written_by  =  'Todd Casey')"),
    ]),
    ("tvshow", "SELECT LANGUAGE ,  count(*) FROM TV_Channel GROUP BY LANGUAGE ORDER BY count(*) ASC LIMIT 1", [
        ("direction-default", "SELECT LANGUAGE ,  count(*) FROM TV_Channel GROUP BY LANGUAGE ORDER BY count(*) LIMIT 1"),
        ("direction-flip", "SELECT LANGUAGE ,  count(*) FROM TV_Channel GROUP BY LANGUAGE ORDER BY count(*) DESC LIMIT 1"),
    ]),
    ("tvshow", "SELECT id FROM TV_Channel GROUP BY Country HAVING count(*)  >  2", [
        ("value-change", "SELECT id FROM TV_Channel GROUP BY Country HAVING count(*)  >  5"),
        ("having-agg-change", "SELECT id FROM TV_Channel GROUP BY Country HAVING sum(id)  >  2"),
    ]),
    ("world_1", "SELECT Name FROM country WHERE IndepYear  >  1950", [
        ("value-change", "SELECT Name FROM country WHERE IndepYear  >  1800"),
        ("op-change", "SELECT Name FROM country WHERE IndepYear  >=  1950"),
    ]),
    ("world_1", "SELECT sum(SurfaceArea) FROM country WHERE Region  =  \"Caribbean\"", [
        ("agg-change", "SELECT avg(SurfaceArea) FROM country WHERE Region  =  \"Caribbean\""),
    ]),
    ("world_1", "SELECT Continent FROM country WHERE Name  =  \"Anguilla\"", [
        ("value-change", "SELECT Continent FROM country WHERE Name  =  \"Aruba\""),
        ("column-change", "SELECT Region FROM country WHERE Name  =  \"Anguilla\""),
    ]),
    ("world_1", "SELECT T2.Language FROM country AS T1 JOIN countrylanguage AS T2 ON T1.Code  =  T2.CountryCode WHERE T1.Name  =  \"Aruba\" ORDER BY Percentage DESC LIMIT 1", [
        ("alias-rename", "SELECT b.Language FROM country AS a JOIN countrylanguage AS b ON a.Code  =  b.CountryCode WHERE a.Name  =  \"Aruba\" ORDER BY b.Percentage DESC LIMIT 1"),
        ("value-change", "SELECT T2.Language FROM country AS T1 JOIN countrylanguage AS T2 ON T1.Code  =  T2.CountryCode WHERE T1.Name  =  \"Brazil\" ORDER BY Percentage DESC LIMIT 1"),
    ]),
    ("world_1", "SELECT Name FROM country WHERE Continent  =  \"Europe\" AND Population  =  \"80000\"", [
        ("conjunct-reorder", "SELECT Name FROM country WHERE Population  =  \"80000\" AND Continent  =  \"Europe\""),
        ("value-type-change", "SELECT Name FROM country WHERE Continent  =  \"Europe\" AND Population  =  80000"),
    ]),
    ("world_1", "SELECT count(*) FROM country WHERE continent  =  \"Asia\" OR continent  =  \"Europe\"", [
        ("connector-change", "SELECT count(*) FROM country WHERE continent  =  \"Asia\" AND continent  =  \"Europe\""),
        ("disjunct-reorder", "SELECT count(*) FROM country WHERE continent  =  \"Europe\" OR continent  =  \"Asia\""),
    ]),
    ("world_1", "SELECT Name FROM country WHERE Population  <  (SELECT min(Population) FROM country WHERE Continent  =  \"Asia\")", [
        ("nested-value-change", "SELECT Name FROM country WHERE Population  <  (SELECT min(Population) FROM country WHERE Continent  =  \"Africa\")"),
        ("nested-agg-change", "SELECT Name FROM country WHERE Population  <  (SELECT max(Population) FROM country WHERE Continent  =  \"Asia\")"),
    ]),
    ("world_1", "SELECT T1.Name FROM country AS T1 JOIN countrylanguage AS T2 ON T1.Code  =  T2.CountryCode WHERE T2.Language  =  \"English\" INTERSECT SELECT T1.Name FROM country AS T1 JOIN countrylanguage AS T2 ON T1.Code  =  T2.CountryCode WHERE T2.Language  =  \"French\"", [
        ("value-change", "SELECT T1.Name FROM country AS T1 JOIN countrylanguage AS T2 ON T1.Code  =  T2.CountryCode WHERE T2.Language  =  \"Dutch\" INTERSECT SELECT T1.Name FROM country AS T1 JOIN countrylanguage AS T2 ON T1.Code  =  T2.CountryCode WHERE T2.Language  =  \"German\""),
        ("set-op-change", "SELECT T1.Name FROM country AS T1 JOIN countrylanguage AS T2 ON T1.Code  =  T2.CountryCode WHERE T2.Language  =  \"English\" EXCEPT SELECT T1.Name FROM country AS T1 JOIN countrylanguage AS T2 ON T1.Code  =  T2.CountryCode WHERE T2.Language  =  \"French\""),
    ]),
    ("world_1", "SELECT Name FROM city WHERE Population BETWEEN 160000 AND 900000", [
        ("value-change", "SELECT Name FROM city WHERE Population BETWEEN 1 AND 10"),
        ("table-swap", "SELECT Name FROM country WHERE Population BETWEEN 160000 AND 900000"),
    ]),
    ("world_1", "SELECT sum(Population) ,  GovernmentForm FROM country GROUP BY GovernmentForm HAVING avg(LifeExpectancy)  >  72", [
        ("value-change", "SELECT sum(Population) ,  GovernmentForm FROM country GROUP BY GovernmentForm HAVING avg(LifeExpectancy)  >  50"),
        ("having-to-where", "SELECT sum(Population) ,  GovernmentForm FROM country WHERE LifeExpectancy  >  72 GROUP BY GovernmentForm"),
    ]),
    ("world_1", "SELECT Name ,  SurfaceArea FROM country ORDER BY SurfaceArea DESC LIMIT 5", [
        ("limit-change", "SELECT Name ,  SurfaceArea FROM country ORDER BY SurfaceArea DESC LIMIT 10"),
        ("column-reorder", "SELECT SurfaceArea, Name FROM country ORDER BY SurfaceArea DESC LIMIT 5"),
    ]),
    ("world_1", "SELECT avg(LifeExpectancy) FROM country WHERE Name NOT IN (SELECT T1.Name FROM country AS T1 JOIN countrylanguage AS T2 ON T1.Code  =  T2.CountryCode WHERE T2.Language  =  \"English\" AND T2.IsOfficial  =  \"T\")", [
        ("nested-conjunct-reorder", "SELECT avg(LifeExpectancy) FROM country WHERE Name NOT IN (SELECT T1.Name FROM country AS T1 JOIN countrylanguage AS T2 ON T1.Code  =  T2.CountryCode WHERE T2.IsOfficial  =  \"T\" AND T2.Language  =  \"English\")"),
        ("nested-value-change", "SELECT avg(LifeExpectancy) FROM country WHERE Name NOT IN (SELECT T1.Name FROM country AS T1 JOIN countrylanguage AS T2 ON T1.Code  =  T2.CountryCode WHERE T2.Language  =  \"Spanish\" AND T2.IsOfficial  =  \"F\")"),
        ("nested-distinct", "SELECT avg(LifeExpectancy) FROM country WHERE Name NOT IN (SELECT DISTINCT T1.Name FROM country AS T1 JOIN countrylanguage AS T2 ON T1.Code  =  T2.CountryCode WHERE T2.Language  =  \"English\" AND T2.IsOfficial  =  \"T\")"),
    ]),
    ("world_1", "SELECT Name FROM country ORDER BY Population / SurfaceArea DESC LIMIT 1", [
        ("operator-change", "SELECT Name FROM country ORDER BY Population * SurfaceArea DESC LIMIT 1"),
        ("operand-swap", "SELECT Name FROM country ORDER BY SurfaceArea / Population DESC LIMIT 1"),
    ]),
    ("world_1", "SELECT Name FROM country WHERE SurfaceArea  >  (SELECT min(SurfaceArea) FROM country WHERE Continent  =  \"Europe\") AND Continent  =  \"Africa\"", [
        ("conjunct-reorder", "SELECT Name FROM country WHERE Continent  =  \"Africa\" AND SurfaceArea  >  (SELECT min(SurfaceArea) FROM country WHERE Continent  =  \"Europe\")"),
    ]),
    ("car_1", "SELECT count(*) FROM CARS_DATA WHERE Cylinders  >  4", [
        ("value-change", "SELECT count(*) FROM CARS_DATA WHERE Cylinders  >  6"),
    ]),
    ("car_1", "SELECT T2.Make FROM CARS_DATA AS T1 JOIN CAR_NAMES AS T2 ON T1.Id  =  T2.MakeId WHERE T1.Cylinders  =  4 ORDER BY horsepower DESC LIMIT 1", [
        ("foreign-key-join", "SELECT T2.Make FROM CAR_NAMES AS T2 JOIN CARS_DATA AS T1 ON T2.MakeId  =  T1.Id WHERE T1.Cylinders  =  4 ORDER BY T1.horsepower DESC LIMIT 1"),
        ("order-key-change", "SELECT T2.Make FROM CARS_DATA AS T1 JOIN CAR_NAMES AS T2 ON T1.Id  =  T2.MakeId WHERE T1.Cylinders  =  4 ORDER BY mpg DESC LIMIT 1"),
    ]),
    ("car_1", "SELECT avg(mpg) FROM CARS_DATA WHERE Cylinders  =  4", [
        ("agg-change", "SELECT max(mpg) FROM CARS_DATA WHERE Cylinders  =  4"),
    ]),
    ("car_1", "SELECT T1.CountryName FROM COUNTRIES AS T1 JOIN CONTINENTS AS T2 ON T1.Continent  =  T2.ContId JOIN CAR_MAKERS AS T3 ON T1.CountryId  =  T3.Country WHERE T2.Continent  =  'europe' GROUP BY T1.CountryName HAVING count(*)  >=  3", [
        ("having-op-change", "SELECT T1.CountryName FROM COUNTRIES AS T1 JOIN CONTINENTS AS T2 ON T1.Continent  =  T2.ContId JOIN CAR_MAKERS AS T3 ON T1.CountryId  =  T3.Country WHERE T2.Continent  =  'europe' GROUP BY T1.CountryName HAVING count(*)  >  3"),
        ("value-change", "SELECT T1.CountryName FROM COUNTRIES AS T1 JOIN CONTINENTS AS T2 ON T1.Continent  =  T2.ContId JOIN CAR_MAKERS AS T3 ON T1.CountryId  =  T3.Country WHERE T2.Continent  =  'asia' GROUP BY T1.CountryName HAVING count(*)  >=  1"),
    ]),
    ("car_1", "SELECT max(Accelerate) ,  Cylinders FROM CARS_DATA GROUP BY Cylinders", [
        ("column-reorder", "SELECT Cylinders, max(Accelerate) FROM CARS_DATA GROUP BY Cylinders"),
    ]),
    ("car_1", "SELECT Model FROM CAR_NAMES GROUP BY Model ORDER BY count(*) DESC LIMIT 1", [
        ("table-swap", "SELECT Model FROM MODEL_LIST GROUP BY Model ORDER BY count(*) DESC LIMIT 1"),
    ]),
    ("car_1", "SELECT count(*) FROM CARS_DATA WHERE weight  >  3000 AND YEAR BETWEEN 1970 AND 1980", [
        ("conjunct-reorder", "SELECT count(*) FROM CARS_DATA WHERE YEAR BETWEEN 1970 AND 1980 AND weight  >  3000"),
        ("between-bounds", "SELECT count(*) FROM CARS_DATA WHERE weight  >  3000 AND YEAR BETWEEN 1 AND 2"),
    ]),
    ("car_1", "SELECT DISTINCT T1.Maker FROM CAR_MAKERS AS T1 JOIN MODEL_LIST AS T2 ON T1.Id  =  T2.Maker", [
        ("distinct-drop", "SELECT T1.Maker FROM CAR_MAKERS AS T1 JOIN MODEL_LIST AS T2 ON T1.Id  =  T2.Maker"),
        ("foreign-key-column", "SELECT DISTINCT T2.Maker FROM CAR_MAKERS AS T1 JOIN MODEL_LIST AS T2 ON T1.Id  =  T2.Maker"),
    ]),
    ("car_1", "SELECT YEAR ,  avg(Weight) FROM CARS_DATA GROUP BY YEAR", [
        ("column-reorder", "SELECT avg(Weight), YEAR FROM CARS_DATA GROUP BY YEAR"),
    ]),
    ("car_1", "SELECT mpg FROM CARS_DATA WHERE cylinders  =  8 OR YEAR  <  1980 ORDER BY mpg DESC LIMIT 1", [
        ("connector-change", "SELECT mpg FROM CARS_DATA WHERE cylinders  =  8 AND YEAR  <  1980 ORDER BY mpg DESC LIMIT 1"),
    ]),
    ("car_1", "SELECT avg(T1.Edispl) FROM CARS_DATA AS T1 JOIN CAR_NAMES AS T2 ON T1.Id  =  T2.MakeId WHERE T2.Model  =  'volvo'", [
        ("value-change", "SELECT avg(T1.Edispl) FROM CARS_DATA AS T1 JOIN CAR_NAMES AS T2 ON T1.Id  =  T2.MakeId WHERE T2.Model  =  'bmw'"),
    ]),
    ("car_1", "SELECT count(*) FROM (SELECT T1.CountryId FROM COUNTRIES AS T1 JOIN CAR_MAKERS AS T2 ON T1.CountryId  =  T2.Country GROUP BY T1.CountryId HAVING count(*)  >  2)", [
        ("from-subquery-value-change", "SELECT count(*) FROM (SELECT T1.CountryId FROM COUNTRIES AS T1 JOIN CAR_MAKERS AS T2 ON T1.CountryId  =  T2.Country GROUP BY T1.CountryId HAVING count(*)  >  5)"),
    ]),
    ("car_1", "SELECT Maker FROM CAR_MAKERS WHERE Maker LIKE '%a%' AND Country  =  1", [
        ("not-like", "SELECT Maker FROM CAR_MAKERS WHERE Maker NOT LIKE '%a%' AND Country  =  1"),
    ]),
]

UNPARSEABLE = [
    ("concert_singer", "SELECT count(*) FROM singer", "SELECT FROM WHERE"),
    ("pets_1", "SELECT count(*) FROM pets WHERE weight  >  10", "SELECT count(*) FROM pets WHERE"),
    ("flight_2", "SELECT count(*) FROM AIRLINES WHERE Country  =  \"USA\"", "SELECT count(*) FROM AIRLINES WHERE Country = \"USA"),
    ("world_1", "SELECT Name FROM country WHERE IndepYear  >  1950", "SELECT nosuchcolumn FROM country"),
]

KEYWORDS = ["select", "from", "where", "group by", "order by", "having", "limit", "join", "on", "as",
            "and", "or", "not", "in", "between", "like", "distinct", "count", "avg", "max", "min",
            "sum", "intersect", "union", "except", "desc", "asc"]


def flip_keyword_case(sql):
    # keywords outside quoted strings only
    parts = re.split(r"(\"[^\"]*\"|'[^']*')", sql)
    out = []
    for i, part in enumerate(parts):
        if i % 2 == 1:
            out.append(part)
            continue
        for kw in KEYWORDS:
            part = re.sub(r"\b%s\b" % kw.replace(" ", r"\s+"),
                          lambda m: m.group(0).swapcase(), part, flags=re.IGNORECASE)
        out.append(part)
    return "".join(out)


def collapse_spaces(sql):
    parts = re.split(r"(\"[^\"]*\"|'[^']*')", sql)
    return "".join(p if i % 2 else re.sub(r"\s+", " ", p) for i, p in enumerate(parts))


def rows():
    for db, gold, preds in BASES:
        yield ("identity", db, gold, gold)
        yield ("keyword-case", db, gold, flip_keyword_case(gold))
        yield ("whitespace", db, gold, collapse_spaces(gold))
        for kind, pred in preds:
            yield (kind, db, gold, pred)
            yield (kind + "-reversed", db, pred, gold)
    for db, gold, pred in UNPARSEABLE:
        yield ("unparseable", db, gold, pred)


if __name__ == "__main__":
    with open(sys.argv[1], "w", encoding="utf-8", newline="\n") as f:
        f.write("kind\tdb_id\tgold\tpred\n")
        for r in rows():
            assert all("\t" not in c and "\n" not in c for c in r)
            f.write("\t".join(r) + "\n")
